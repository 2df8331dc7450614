# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 精確計數（小規模基準）

ESU 列舉所有 CIS[k]、精確計數向量、顯式建構 HON，以及暴力計算 γ。
所有估計器的驗收測試都以此模組為準。
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterator, List, Mapping, Optional, Sequence

import numpy as np

from ripple_toolkit.core.canonical import classify, describe_pattern, pattern_key, sorted_counts
from ripple_toolkit.core.config import settings
from ripple_toolkit.core.graph import InputGraph
from ripple_toolkit.core.hon import hon_neighbors
from ripple_toolkit.core.models import Cis, CountVector, PatternKey
from ripple_toolkit.core.subgraph import induce, is_connected, merge_edge_subgraph
from ripple_toolkit.exceptions import ConfigurationError, InvalidSubgraphError, ResourceCapError
from ripple_toolkit.utils.logger import logger


@dataclass
class ExactCounts:
    """精確計數：counts 為整數值，total = Σ counts"""

    k: int
    counts: Dict[PatternKey, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_count_vector(self) -> CountVector:
        return {key: float(value) for key, value in self.counts.items()}


@dataclass
class HonGraph:
    """顯式 HON：graph 的頂點 i 對應 states[i]"""

    m: int
    graph: InputGraph
    states: List[Cis]
    index: Dict[Cis, int]

    @property
    def num_states(self) -> int:
        return len(self.states)

    @property
    def num_edges(self) -> int:
        return self.graph.num_edges


def enumerate_cis(g: InputGraph, k: int, cap: Optional[int] = None) -> Iterator[Cis]:
    """
    ESU 列舉：每個連通誘導 k 頂點子圖恰好產生一次

    從每個根 v 出發，只以比 v 大、且為目前子圖「獨佔鄰居」的頂點擴張。

    Args:
        g: 輸入圖
        k: 子圖大小
        cap: 產生數量上限（預設取 settings.ORACLE_CIS_CAP）

    Yields:
        Cis: 排序後的頂點元組

    Raises:
        ConfigurationError: k < 1
        ResourceCapError: 超過上限
    """
    if k < 1:
        raise ConfigurationError(f"k must be >= 1 (got {k})")
    cap = settings.ORACLE_CIS_CAP if cap is None else cap
    adj = g.adjacency
    emitted = 0

    def extend(sub: List[int], closed: set, extension: List[int], root: int):
        nonlocal emitted
        if len(sub) == k:
            emitted += 1
            if emitted > cap:
                raise ResourceCapError(f"CIS enumeration exceeded cap {cap}", cap=cap)
            yield tuple(sorted(sub))
            return
        pending = list(extension)
        while pending:
            w = pending.pop(0)
            exclusive = [u for u in adj[w] if u > root and u not in closed]
            next_closed = closed | set(exclusive) | {w}
            yield from extend(
                sub + [w], next_closed, pending + exclusive, root
            )

    for root in range(g.n):
        extension = [u for u in adj[root] if u > root]
        closed = {root} | set(adj[root])
        yield from extend([root], closed, extension, root)


def exact_count_vector(g: InputGraph, k: int, cap: Optional[int] = None) -> ExactCounts:
    """
    精確計數向量 C[k]

    Returns:
        ExactCounts：以 pattern_key 為鍵
    """
    result = ExactCounts(k=k)
    for cis in enumerate_cis(g, k, cap=cap):
        key = pattern_key(induce(g, cis))
        result.counts[key] = result.counts.get(key, 0) + 1
    logger.debug("Exact CIS[%d] count: %d in %d patterns", k, result.total, len(result.counts))
    return result


def build_hon(g: InputGraph, m: int, cap: Optional[int] = None) -> HonGraph:
    """
    顯式建構 HON[m]

    Raises:
        ResourceCapError: 狀態數超過上限
    """
    cap = settings.ORACLE_HON_CAP if cap is None else cap
    states = sorted(enumerate_cis(g, m, cap=cap))
    index = {state: i for i, state in enumerate(states)}
    edges = []
    for i, state in enumerate(states):
        for other in hon_neighbors(g, state):
            j = index[other]
            if i < j:
                edges.append((i, j))
    hon = InputGraph.from_edges(edges, n=len(states))
    logger.debug("Built HON[%d]: %d states, %d edges", m, hon.n, hon.num_edges)
    return HonGraph(m=m, graph=hon, states=states, index=index)


def gamma_bruteforce(g: InputGraph, vset: Sequence[int]) -> int:
    """
    暴力計算 γ：vset 中兩兩相異、皆連通、交集為 k-2 且聯集為 vset 的 (k-1) 子集對數

    Raises:
        InvalidSubgraphError: G[vset] 不連通
    """
    vset = sorted(vset)
    k = len(vset)
    if k < 2 or not is_connected(induce(g, vset)):
        raise InvalidSubgraphError(f"G[{tuple(vset)}] is not a connected subgraph")
    connected = [
        sub for sub in combinations(vset, k - 1) if is_connected(induce(g, sub))
    ]
    count = 0
    for a, b in combinations(connected, 2):
        if len(set(a) & set(b)) == k - 2 and set(a) | set(b) == set(vset):
            count += 1
    return count


def hon_edge_sum(g: InputGraph, hon: HonGraph) -> CountVector:
    """在顯式 HON 上計算 Σ 1{pattern}/γ，應等於 C[m+1]"""
    totals: CountVector = {}
    for i, j in hon.graph.edges():
        key, gam = classify(merge_edge_subgraph(g, hon.states[i], hon.states[j]))
        totals[key] = totals.get(key, 0.0) + 1.0 / gam
    return totals


def compare_counts(estimate: Mapping[PatternKey, float], exact: Mapping[PatternKey, float]) -> Dict[str, float]:
    """
    估計值與精確值的誤差

    l2 / linf 先將兩個向量各自正規化為分佈，再取差的範數，
    與準確度實驗中的比較方式一致。

    Returns:
        relative_error: |Σest - Σexact| / Σexact
        l2: ‖p̂ - p‖₂
        linf: max|p̂ - p|
    """
    keys = sorted(set(estimate) | set(exact))
    est = np.array([estimate.get(key, 0.0) for key in keys], dtype=np.float64)
    ref = np.array([exact.get(key, 0.0) for key in keys], dtype=np.float64)
    est_total = float(est.sum())
    ref_total = float(ref.sum())

    p_hat = est / est_total if est_total > 0 else np.zeros_like(est)
    p_ref = ref / ref_total if ref_total > 0 else np.zeros_like(ref)
    diff = p_hat - p_ref
    return {
        "relative_error": abs(est_total - ref_total) / ref_total if ref_total else abs(est_total),
        "l2": float(np.linalg.norm(diff)),
        "linf": float(np.abs(diff).max(initial=0.0)),
    }


def count_rows(counts: Mapping[PatternKey, float]) -> List[Dict[str, object]]:
    """計數向量轉為報表列（與估計結果共用欄位）"""
    rows = []
    for key, value in sorted_counts(counts):
        row = describe_pattern(key).to_dict()
        row["estimate"] = value
        rows.append(row)
    return rows


__all__ = [
    "ExactCounts",
    "HonGraph",
    "enumerate_cis",
    "exact_count_vector",
    "build_hon",
    "gamma_bruteforce",
    "hon_edge_sum",
    "compare_counts",
    "count_rows",
]
