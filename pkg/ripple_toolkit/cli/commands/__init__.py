# -*- coding: utf-8 -*-
"""Ripple Toolkit - 子命令"""
