# -*- coding: utf-8 -*-
"""
Ripple Toolkit - CLI 命令列介面模組

- main: 引數解析與結束碼
- config_handler: 設定檔與 CLI 引數合併
- rich_ui: 終端摘要與進度條
- commands: count / exact / validate / bench 子命令
"""

from .config_handler import build_run_config, configure_logging, load_and_merge_config

__all__ = ["load_and_merge_config", "build_run_config", "configure_logging"]
