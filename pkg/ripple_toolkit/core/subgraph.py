# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 小型子圖

以位元遮罩表示 G[V(s)] 的暫存結構，以及誘導、連通性、割點、
子圖偏差 γ 與 HON 邊合併等運算。
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ripple_toolkit.core.graph import InputGraph
from ripple_toolkit.core.models import MAX_PATTERN_ORDER, Cis
from ripple_toolkit.exceptions import InvalidSubgraphError


@dataclass(frozen=True)
class SmallGraph:
    """
    小型帶標籤圖

    masks[i] 的第 j 位元為 1 表示 i 與 j 相鄰（對稱、對角為零）。
    vertices 記錄來源頂點 id，不參與相等比較。
    """

    masks: Tuple[int, ...]
    labels: Tuple[int, ...]
    vertices: Tuple[int, ...] = ()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SmallGraph):
            return NotImplemented
        return self.masks == other.masks and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.masks, self.labels))

    @classmethod
    def from_edges(
        cls,
        order: int,
        edges: Iterable[Tuple[int, int]],
        labels: Optional[Sequence[int]] = None,
    ) -> "SmallGraph":
        """由邊列表建立（測試與模式列舉使用）"""
        masks = [0] * order
        for i, j in edges:
            if i == j:
                raise InvalidSubgraphError(f"self-loop on {i}")
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        label_tuple = tuple(labels) if labels is not None else (0,) * order
        if len(label_tuple) != order:
            raise InvalidSubgraphError("label count does not match order")
        return cls(masks=tuple(masks), labels=label_tuple)

    @property
    def order(self) -> int:
        return len(self.masks)

    @property
    def edge_count(self) -> int:
        return sum(bin(m).count("1") for m in self.masks) // 2

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(bin(m).count("1") for m in self.masks)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.masks[i] >> j & 1)

    def edges(self) -> List[Tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.order)
            for j in range(i + 1, self.order)
            if self.masks[i] >> j & 1
        ]

    def permuted(self, perm: Sequence[int]) -> "SmallGraph":
        """依 perm 重新編號：新頂點 perm[i] 對應舊頂點 i"""
        order = self.order
        masks = [0] * order
        labels = [0] * order
        for i in range(order):
            labels[perm[i]] = self.labels[i]
            for j in range(order):
                if self.masks[i] >> j & 1:
                    masks[perm[i]] |= 1 << perm[j]
        return SmallGraph(masks=tuple(masks), labels=tuple(labels))


def induce(g: InputGraph, vset: Sequence[int]) -> SmallGraph:
    """
    誘導子圖 G[vset]

    Args:
        g: 輸入圖
        vset: 排序後的相異頂點 id

    Returns:
        SmallGraph（標籤自 g 複製）
    """
    if len(vset) > MAX_PATTERN_ORDER:
        raise InvalidSubgraphError(
            f"subgraph order {len(vset)} exceeds {MAX_PATTERN_ORDER}"
        )
    if len(set(vset)) != len(vset):
        raise InvalidSubgraphError(f"duplicate vertices in {tuple(vset)}")
    adj = g.adjacency_sets
    label_list = g.label_list
    masks = []
    for u in vset:
        nbrs = adj[u]
        mask = 0
        for j, w in enumerate(vset):
            if w in nbrs:
                mask |= 1 << j
        masks.append(mask)
    return SmallGraph(
        masks=tuple(masks),
        labels=tuple(label_list[u] for u in vset),
        vertices=tuple(vset),
    )


def _mask_connected(masks: Sequence[int], subset: int) -> bool:
    """判斷 subset（位元集合）在 masks 上的誘導子圖是否連通"""
    if subset == 0:
        return False
    start = subset & -subset
    seen = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        i = low.bit_length() - 1
        new = masks[i] & subset & ~seen
        seen |= new
        frontier |= new
    return seen == subset


def is_connected(sg: SmallGraph) -> bool:
    """子圖是否連通（單一頂點視為連通）"""
    if sg.order < 1:
        raise InvalidSubgraphError("is_connected requires order >= 1")
    return _mask_connected(sg.masks, (1 << sg.order) - 1)


def is_connected_set(g: InputGraph, vertices: Iterable[int]) -> bool:
    """G[vertices] 是否連通（直接在輸入圖上做 BFS）"""
    remaining = set(vertices)
    if not remaining:
        return False
    adj = g.adjacency_sets
    start = remaining.pop()
    stack = [start]
    while stack:
        x = stack.pop()
        found = [w for w in remaining if w in adj[x]]
        for w in found:
            remaining.discard(w)
            stack.append(w)
    return not remaining


@lru_cache(maxsize=1 << 16)
def _articulation_masks(masks: Tuple[int, ...]) -> FrozenSet[int]:
    # Hopcroft–Tarjan：迭代式 DFS 計算 depth / lowpoint
    order = len(masks)
    depth = [-1] * order
    low = [0] * order
    parent = [-1] * order
    children = [0] * order
    cut = set()

    depth[0] = 0
    low[0] = 0
    stack = [(0, masks[0])]
    while stack:
        v, pending = stack[-1]
        if pending:
            bit = pending & -pending
            stack[-1] = (v, pending ^ bit)
            w = bit.bit_length() - 1
            if depth[w] == -1:
                parent[w] = v
                children[v] += 1
                depth[w] = low[w] = depth[v] + 1
                stack.append((w, masks[w]))
            elif w != parent[v]:
                low[v] = min(low[v], depth[w])
            continue
        stack.pop()
        p = parent[v]
        if p >= 0:
            low[p] = min(low[p], low[v])
            if parent[p] >= 0 and low[v] >= depth[p]:
                cut.add(p)
    if children[0] > 1:
        cut.add(0)
    return frozenset(cut)


def articulation_points(sg: SmallGraph) -> FrozenSet[int]:
    """
    割點集合 𝒜_s（子圖內的頂點索引）

    Raises:
        InvalidSubgraphError: 子圖不連通
    """
    if not is_connected(sg):
        raise InvalidSubgraphError("articulation_points requires a connected subgraph")
    return _articulation_masks(sg.masks)


def gamma(sg: SmallGraph) -> int:
    """
    子圖偏差 γ = C(k - |𝒜_s|, 2)

    即 HON[k-1] 中頂點聯集恰為 V(sg) 的邊數。
    """
    if sg.order < 2:
        raise InvalidSubgraphError("gamma requires order >= 2")
    return comb(sg.order - len(articulation_points(sg)), 2)


def merge_edge_subgraph(g: InputGraph, u: Cis, v: Cis) -> SmallGraph:
    """
    HON 邊 (u, v) 所誘導的 k 階子圖 G[V(u) ∪ V(v)]

    Raises:
        InvalidSubgraphError: |V(u) ∩ V(v)| != k-2
    """
    if len(u) != len(v) or len(set(u) & set(v)) != len(u) - 1:
        raise InvalidSubgraphError(f"{u} and {v} do not share all but one vertex")
    return induce(g, sorted(set(u) | set(v)))


__all__ = [
    "SmallGraph",
    "induce",
    "is_connected",
    "is_connected_set",
    "articulation_points",
    "gamma",
    "merge_edge_subgraph",
]
