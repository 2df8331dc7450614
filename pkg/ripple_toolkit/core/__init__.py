# -*- coding: utf-8 -*-
"""Ripple Toolkit - Core 模組"""

from .canonical import classify, decode_key, describe_pattern, pattern_class, pattern_key
from .config import Settings, settings
from .config_loader import DEFAULT_CONFIG, load_config
from .graph import InputGraph, load_edge_list, load_labels, multi_source_bfs_dist
from .hon import hon_neighbors, local_articulation_points, sample_hon_neighbor
from .models import Cis, CountVector, PatternKey, RunConfig
from .subgraph import SmallGraph, articulation_points, gamma, induce, is_connected

__all__ = [
    # 資料模型
    "Cis",
    "CountVector",
    "PatternKey",
    "RunConfig",
    "InputGraph",
    "SmallGraph",
    # 設定
    "Settings",
    "settings",
    "DEFAULT_CONFIG",
    "load_config",
    # 圖工具函式
    "load_edge_list",
    "load_labels",
    "multi_source_bfs_dist",
    "induce",
    "is_connected",
    "articulation_points",
    "gamma",
    # 標準型
    "pattern_key",
    "classify",
    "decode_key",
    "describe_pattern",
    "pattern_class",
    # HON
    "hon_neighbors",
    "local_articulation_points",
    "sample_hon_neighbor",
]
