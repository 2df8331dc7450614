# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 高階網路 (HON) 鄰域

HON[m] 的頂點為所有 CIS[m]，兩個 CIS 共享 m-1 個頂點時相鄰。
hon_neighbors 以交換 (u, v) 窮舉鄰域；sample_hon_neighbor 以割點加速的
拒絕抽樣從鄰域中均勻抽樣，不需要展開整個鄰域。
"""

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from ripple_toolkit.core.graph import InputGraph
from ripple_toolkit.core.models import Cis
from ripple_toolkit.core.subgraph import _articulation_masks, induce, is_connected_set
from ripple_toolkit.exceptions import InvalidSubgraphError, SamplingError

DEFAULT_ATTEMPT_FACTOR = 10_000


def hon_neighbors(g: InputGraph, s: Cis) -> List[Cis]:
    """
    HON 鄰域的精確列舉

    Args:
        g: 輸入圖
        s: 排序後的 CIS

    Returns:
        List[Cis]: 所有以 v ∈ N(V(s))∖V(s) 取代 u ∈ V(s) 後仍連通的 CIS，已排序且無重複
    """
    adj = g.adjacency
    members = set(s)
    frontier = sorted({w for u in s for w in adj[u]} - members)
    cut = local_articulation_points(g, s)

    result = []
    for idx, u in enumerate(s):
        rest = members - {u}
        for v in frontier:
            candidate = rest | {v}
            if idx in cut or len(s) == 1:
                ok = is_connected_set(g, candidate)
            else:
                # u 不是割點時 V(s)∖{u} 連通，只需 v 與其相鄰
                ok = any(w in rest for w in adj[v])
            if ok:
                result.append(tuple(sorted(candidate)))
    result.sort()
    return result


def local_articulation_points(g: InputGraph, s: Cis) -> FrozenSet[int]:
    """s 的割點（以 s 內索引表示）"""
    return _articulation_masks(induce(g, s).masks)


@dataclass(frozen=True)
class StateInfo:
    """sample_hon_neighbor 每個狀態需要的度數與割點資料"""

    degrees: Tuple[int, ...]
    degree_sum: int
    cut: FrozenSet[int]


def state_info(g: InputGraph, s: Cis) -> StateInfo:
    adj = g.adjacency
    degrees = tuple(len(adj[u]) for u in s)
    return StateInfo(degrees=degrees, degree_sum=sum(degrees), cut=local_articulation_points(g, s))


def sample_hon_neighbor(
    g: InputGraph,
    s: Cis,
    rng: np.random.Generator,
    max_attempts: Optional[int] = None,
    info: Optional[StateInfo] = None,
) -> Cis:
    """
    從 HON 鄰域均勻抽樣一個鄰居

    每次提案：以 ∝ deg_s - dg(u) 選要移除的 u，以 ∝ dg(a) 選錨點 a ∈ V(s)∖{u}，
    v 均勻取自 N(a)，以 1/|N(v) ∩ V(s)∖{u}| 接受；最後要求 v ∉ V(s) 且
    （u 不是割點，或取代後仍連通）。

    Args:
        g: 輸入圖
        s: 排序後的 CIS，|s| >= 2
        rng: numpy 隨機產生器
        max_attempts: 提案上限（預設 10^4 · |s|^2）
        info: 預先計算的 state_info(g, s)；None 則當場計算

    Returns:
        Cis: 均勻分佈的鄰居

    Raises:
        SamplingError: 超過提案上限（通常表示鄰域為空）
    """
    m = len(s)
    if m < 2:
        raise InvalidSubgraphError("sample_hon_neighbor requires |s| >= 2")
    if max_attempts is None:
        max_attempts = DEFAULT_ATTEMPT_FACTOR * m * m

    if info is None:
        info = state_info(g, s)
    adj = g.adjacency
    adj_sets = g.adjacency_sets
    deg = info.degrees
    deg_s = info.degree_sum
    members = set(s)
    cut = info.cut
    remove_total = (m - 1) * deg_s
    if remove_total == 0:
        raise SamplingError(f"state {s} has no incident edges")

    random = rng.random
    for _ in range(max_attempts):
        # 選擇要移除的頂點 u
        x = random() * remove_total
        iu = m - 1
        for i in range(m):
            x -= deg_s - deg[i]
            if x < 0:
                iu = i
                break
        u = s[iu]

        # 選擇錨點 a
        anchor_total = deg_s - deg[iu]
        if anchor_total == 0:
            continue
        x = random() * anchor_total
        ia = -1
        for i in range(m):
            if i == iu:
                continue
            x -= deg[i]
            ia = i
            if x < 0:
                break
        nbrs = adj[s[ia]]
        v = nbrs[int(random() * len(nbrs))]

        # v 的抽樣偏差
        v_nbrs = adj_sets[v]
        bias = sum(1 for w in s if w != u and w in v_nbrs)
        if random() * bias > 1.0:
            continue
        if v in members:
            continue
        candidate = (members - {u}) | {v}
        if iu not in cut or is_connected_set(g, candidate):
            return tuple(sorted(candidate))

    raise SamplingError(
        f"no HON neighbor of {s} accepted within {max_attempts} proposals"
    )


__all__ = [
    "hon_neighbors",
    "local_articulation_points",
    "sample_hon_neighbor",
    "StateInfo",
    "state_info",
    "DEFAULT_ATTEMPT_FACTOR",
]
