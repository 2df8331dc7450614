# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 設定檔處理器

處理設定檔載入和與 CLI 引數的合併。
優先順序：DEFAULT_CONFIG < config.yaml < RIPPLE_WORKERS < 明確給定的 CLI 引數
"""

import argparse
import os
from typing import Any, Dict, Optional

from ripple_toolkit.core.config import Settings, load_settings
from ripple_toolkit.core.config_loader import load_config
from ripple_toolkit.core.models import RunConfig
from ripple_toolkit.utils.logger import set_level

# CLI 引數名稱 -> RunConfig 欄位
ARG_TO_FIELD = {
    "k": "k",
    "epsilon": "epsilon",
    "n1": "n1",
    "reservoir": "reservoir_capacity",
    "min_tours": "min_tours",
    "max_tours": "max_tours",
    "max_steps": "max_steps",
    "workers": "workers",
    "seed": "rng_seed",
    "batch": "batch",
}


def load_and_merge_config(
    cli_args: argparse.Namespace, settings: Optional[Settings] = None
) -> Dict[str, Any]:
    """載入設定檔並與 CLI 引數合併

    Args:
        cli_args: argparse.Namespace 物件（CLI 引數）
        settings: 環境變數設定（預設重新讀取）

    Returns:
        Dict[str, Any]: 合併後的完整設定字典
    """
    settings = settings or load_settings()
    config = load_config(getattr(cli_args, "config", None))
    run = dict(config.get("run") or {})

    if settings.WORKERS is not None and getattr(cli_args, "workers", None) is None:
        run["workers"] = settings.WORKERS

    for arg, field_name in ARG_TO_FIELD.items():
        value = getattr(cli_args, arg, None)
        if value is not None:
            run[field_name] = value

    config["run"] = run
    oracle = config.setdefault("oracle", {})
    if os.getenv("RIPPLE_ORACLE_CIS_CAP", "").strip() or "cis_cap" not in oracle:
        oracle["cis_cap"] = settings.ORACLE_CIS_CAP
    if os.getenv("RIPPLE_ORACLE_HON_CAP", "").strip() or "hon_cap" not in oracle:
        oracle["hon_cap"] = settings.ORACLE_HON_CAP

    fmt = getattr(cli_args, "format", None)
    if fmt:
        config.setdefault("output", {})["format"] = fmt
    return config


def build_run_config(config: Dict[str, Any]) -> RunConfig:
    """由合併後的設定建立 RunConfig（驗證失敗拋出 ConfigurationError）"""
    return RunConfig.from_mapping(config.get("run") or {})


def configure_logging(cli_args: argparse.Namespace, settings: Optional[Settings] = None) -> str:
    """依 -v / -q 或 RIPPLE_LOG_LEVEL 設定日誌級別"""
    settings = settings or load_settings()
    if getattr(cli_args, "verbose", False):
        level = "DEBUG"
    elif getattr(cli_args, "quiet", False):
        level = "WARNING"
    else:
        level = settings.LOG_LEVEL
    set_level(level)
    return level


__all__ = ["load_and_merge_config", "build_run_config", "configure_logging", "ARG_TO_FIELD"]
