# -*- coding: utf-8 -*-
"""
pytest configuration and fixtures

小型測試圖以 networkx 產生後轉為 InputGraph，
同一份 networkx 圖也可作為割點、同構與連通分量的交叉檢查。
"""

import networkx as nx
import numpy as np
import pytest

from ripple_toolkit.core.graph import InputGraph


def to_input_graph(nx_graph: nx.Graph, labels=None) -> InputGraph:
    """networkx 圖（頂點為 0..n-1）轉為 InputGraph"""
    return InputGraph.from_edges(list(nx_graph.edges()), n=nx_graph.number_of_nodes(), labels=labels)


def disjoint_triangles() -> nx.Graph:
    return nx.disjoint_union(nx.complete_graph(3), nx.complete_graph(3))


def er_graph(seed: int, n: int = 50, p: float = 0.15) -> nx.Graph:
    return nx.gnp_random_graph(n, p, seed=seed)


@pytest.fixture
def k3():
    return to_input_graph(nx.complete_graph(3))


@pytest.fixture
def k4():
    return to_input_graph(nx.complete_graph(4))


@pytest.fixture
def p4():
    """路徑 0-1-2-3"""
    return to_input_graph(nx.path_graph(4))


@pytest.fixture
def s3():
    """星形：中心 0，三片葉子"""
    return to_input_graph(nx.star_graph(3))


@pytest.fixture
def s4():
    return to_input_graph(nx.star_graph(4))


@pytest.fixture
def two_triangles():
    return to_input_graph(disjoint_triangles())


@pytest.fixture
def petersen_nx():
    return nx.petersen_graph()


@pytest.fixture
def petersen(petersen_nx):
    return to_input_graph(petersen_nx)


@pytest.fixture
def er_small():
    """20 個頂點的 ER 圖（固定種子）"""
    return to_input_graph(nx.gnp_random_graph(20, 0.25, seed=3))


@pytest.fixture(params=[11, 12, 13], ids=lambda seed: f"er50-{seed}")
def er50(request):
    return to_input_graph(er_graph(request.param))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def edge_file(tmp_path):
    """寫出邊列表檔的輔助函式"""

    def _write(text: str, name: str = "graph.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    """避免外部環境變數影響設定相關測試"""
    for name in ("RIPPLE_WORKERS", "RIPPLE_LOG_LEVEL", "RIPPLE_ORACLE_CIS_CAP", "RIPPLE_ORACLE_HON_CAP"):
        monkeypatch.delenv(name, raising=False)
