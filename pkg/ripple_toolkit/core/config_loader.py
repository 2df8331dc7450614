# -*- coding: utf-8 -*-
"""
設定檔載入器

載入 YAML 設定檔，支援預設值和命令列引數覆蓋。
"""

import copy
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from ripple_toolkit.exceptions import ConfigurationError
from ripple_toolkit.utils.logger import logger

# 預設設定
DEFAULT_CONFIG: Dict[str, Any] = {
    "run": {
        "k": 4,
        "epsilon": 0.01,
        "n1": 16,
        "reservoir_capacity": 100_000,
        "min_tours": 256,
        "max_tours": 1_000_000,
        "max_steps": 1_000_000,
        "workers": 1,
        "rng_seed": 0,
        "batch": None,
        "rejection_cap": 100_000,
        "attempt_factor": 10_000,
    },
    "oracle": {
        "cis_cap": 10_000_000,
        "hon_cap": 1_000_000,
    },
    "output": {
        "format": "json",
        "show_progress": True,
    },
}


def deep_merge(base: Dict, override: Dict) -> Dict:
    """
    深度合併兩個字典，override 會覆蓋 base 中的值

    Args:
        base: 基礎字典
        override: 覆蓋字典

    Returns:
        合併後的字典
    """
    result = copy.deepcopy(base)

    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value

    return result


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    載入設定檔

    搜尋順序：
    1. 指定的路徑（不存在時拋出 ConfigurationError）
    2. 當前目錄的 config.yaml / config.yml
    3. 使用者目錄的 ~/.ripple_toolkit/config.yaml
    4. 預設設定

    Args:
        config_path: 設定檔路徑（可選）

    Returns:
        設定字典
    """
    config = copy.deepcopy(DEFAULT_CONFIG)

    if config_path:
        explicit = Path(config_path)
        if not explicit.exists():
            raise ConfigurationError(f"Config file not found: {config_path}")
        search_paths = [explicit]
    else:
        search_paths = [
            Path.cwd() / "config.yaml",
            Path.cwd() / "config.yml",
            Path.home() / ".ripple_toolkit" / "config.yaml",
        ]

    for path in search_paths:
        if not path.exists():
            continue
        try:
            with open(path, "r", encoding="utf-8") as f:
                file_config = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML in {path}: {e}") from e

        if file_config:
            if not isinstance(file_config, dict):
                raise ConfigurationError(f"Config root must be a mapping: {path}")
            config = deep_merge(config, file_config)
        logger.info("Loaded config file: %s", path)
        return config

    logger.debug("Using default config")
    return config
