# -*- coding: utf-8 -*-
"""Ripple Toolkit - 測試套件"""
