# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 連通誘導子圖（CIS[k]）計數估計套件 (v0.1.0)

以分層的高階網路（HON）上的再生隨機遊走 tour 估計大小為 k 的
連通誘導子圖在各同構類別下的數量，並提供精確計數的對照工具：
- ripple_engine: 分層 tour 估計器
- oracle: ESU 列舉與 HON 建構（小規模圖）
- baselines: 簡單隨機遊走與單一超節點 tour 基準

使用範例:
    from ripple_toolkit import InputGraph, RunConfig, run
    g = InputGraph.from_edges([(0, 1), (1, 2), (2, 3)], n=4)
    result = run(g, RunConfig(k=3, epsilon=0.05))
    print(result.total)

命令列使用:
    ripple count --graph g.txt --k 4
    python -m ripple_toolkit count --graph g.txt --k 4
"""

__version__ = "0.1.0"
__author__ = "Danwin47"

from .core.graph import InputGraph, load_edge_list
from .core.models import RunConfig
from .processors.oracle import exact_count_vector
from .processors.ripple_engine import run
from .processors.stats_collector import RippleResult

__all__ = [
    "InputGraph",
    "load_edge_list",
    "RunConfig",
    "RippleResult",
    "run",
    "exact_count_vector",
    "__version__",
]
