# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 分層 (stratification)

選擇彼此遠離的種子子圖 I₁、預先計算到種子頂點的 BFS 距離，
並以 ρ 將每個 CIS[k-1] 狀態映射到分層編號。
小規模圖可用 validate_eps 窮舉檢查每個分層圖是否連通。
"""

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from scipy.sparse import csgraph
import scipy.sparse as sp

from ripple_toolkit.core.graph import InputGraph, connected_components, multi_source_bfs_dist
from ripple_toolkit.core.models import Cis
from ripple_toolkit.core.subgraph import is_connected_set
from ripple_toolkit.exceptions import ConfigurationError, InvalidSubgraphError
from ripple_toolkit.processors.oracle import HonGraph, build_hon
from ripple_toolkit.utils.logger import logger

PathLike = Union[str, Path]

# 超過此數量後改為隨機放置，避免每個種子都要一次全圖 BFS
FARTHEST_POINT_LIMIT = 64


# ----------------------------------------------------------------------
# 種子
# ----------------------------------------------------------------------
@dataclass
class SeedSet:
    """
    種子子圖集合 I₁

    Attributes:
        seeds: 每個種子為排序後的 k-1 頂點 CIS
        seed_of: 每個頂點所屬的種子索引，非種子頂點為 -1
        warnings: 選擇過程中的警告訊息
    """

    seeds: List[Cis]
    seed_of: np.ndarray
    warnings: List[str] = field(default_factory=list)

    @classmethod
    def from_seeds(cls, g: InputGraph, seeds: Sequence[Sequence[int]]) -> "SeedSet":
        """
        由頂點列表建立並驗證種子集合

        Raises:
            InvalidSubgraphError: 種子不連通、大小不一致或彼此重疊
        """
        seed_of = np.full(g.n, -1, dtype=np.int64)
        normalized: List[Cis] = []
        size = None
        for idx, seed in enumerate(seeds):
            cis = tuple(sorted(int(v) for v in seed))
            if not cis or len(set(cis)) != len(cis):
                raise InvalidSubgraphError(f"seed {idx} is empty or has duplicate vertices")
            if cis[0] < 0 or cis[-1] >= g.n:
                raise InvalidSubgraphError(f"seed {idx} has vertex ids outside 0..{g.n - 1}")
            if size is not None and len(cis) != size:
                raise InvalidSubgraphError("all seeds must have the same size")
            size = len(cis)
            if not is_connected_set(g, cis):
                raise InvalidSubgraphError(f"seed {cis} does not induce a connected subgraph")
            if np.any(seed_of[list(cis)] >= 0):
                raise InvalidSubgraphError(f"seed {cis} overlaps an earlier seed")
            seed_of[list(cis)] = idx
            normalized.append(cis)
        return cls(seeds=normalized, seed_of=seed_of)

    @property
    def size(self) -> int:
        return len(self.seeds)

    @property
    def vertices(self) -> List[int]:
        return sorted(v for seed in self.seeds for v in seed)

    def to_json(self, path: PathLike) -> Path:
        """寫出種子（頂點 id 列表的列表），供重現執行"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump({"seeds": [list(seed) for seed in self.seeds]}, f, indent=2)
        logger.info("Seeds written to %s", path)
        return path

    @classmethod
    def from_json(cls, path: PathLike, g: InputGraph) -> "SeedSet":
        """
        讀取 to_json 寫出的種子檔

        Raises:
            ConfigurationError: 檔案內容不是 {"seeds": [[...], ...]} 或純列表
        """
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        seeds = data.get("seeds") if isinstance(data, dict) else data
        if not isinstance(seeds, list) or not all(isinstance(s, list) for s in seeds):
            raise ConfigurationError(f"{path}: expected a list of vertex-id lists")
        return cls.from_seeds(g, seeds)


def _grow_seed(g: InputGraph, start: int, size: int, claimed: np.ndarray) -> Optional[Cis]:
    """從 start 以 BFS 擴張出 size 個未被佔用的頂點；不足時回傳 None"""
    if claimed[start]:
        return None
    adj = g.adjacency
    picked = [start]
    seen = {start}
    queue = [start]
    head = 0
    while head < len(queue) and len(picked) < size:
        x = queue[head]
        head += 1
        for w in adj[x]:
            if w in seen or claimed[w]:
                continue
            seen.add(w)
            queue.append(w)
            picked.append(w)
            if len(picked) == size:
                break
    if len(picked) < size:
        return None
    return tuple(sorted(picked))


def select_seeds(g: InputGraph, n1: int, k: int, rng: np.random.Generator) -> SeedSet:
    """
    選擇彼此遠離、互不重疊的種子子圖

    每個可用分量先以隨機頂點為起點放置一個種子；其後每次從距已佔用
    頂點最遠的頂點開始擴張。超過 FARTHEST_POINT_LIMIT 個種子後改為隨機放置。

    Args:
        g: 輸入圖
        n1: 目標種子數
        k: 子圖大小（種子大小為 k-1）
        rng: numpy 隨機產生器

    Returns:
        SeedSet（數量可能少於 n1，並附警告）

    Raises:
        ConfigurationError: n1 小於可用分量數
    """
    size = k - 1
    warnings: List[str] = []
    comp = connected_components(g)
    comp_sizes = np.bincount(comp) if g.n else np.zeros(0, dtype=np.int64)

    eligible = [c for c in range(len(comp_sizes)) if comp_sizes[c] >= size]
    skipped = len(comp_sizes) - len(eligible)
    if skipped:
        message = f"{skipped} component(s) with fewer than {size} vertices skipped"
        warnings.append(message)
        logger.warning(message)
    if not eligible:
        raise ConfigurationError(f"graph has no component with at least {size} vertices")
    if n1 < len(eligible):
        raise ConfigurationError(
            f"n1={n1} is smaller than the number of usable components ({len(eligible)})"
        )

    claimed = np.zeros(g.n, dtype=bool)
    usable = np.isin(comp, eligible)
    seeds: List[Cis] = []

    def claim(seed: Cis) -> None:
        seeds.append(seed)
        claimed[list(seed)] = True

    # 每個分量一個種子
    for c in eligible:
        members = np.flatnonzero(comp == c)
        for start in rng.permutation(members).tolist():
            seed = _grow_seed(g, start, size, claimed)
            if seed is not None:
                claim(seed)
                break

    # 最遠點放置
    while len(seeds) < min(n1, FARTHEST_POINT_LIMIT):
        dist = multi_source_bfs_dist(g, np.flatnonzero(claimed))
        candidates = np.flatnonzero(usable & np.isfinite(dist) & (dist > 0))
        if candidates.size == 0:
            break
        order = candidates[np.lexsort((candidates, -dist[candidates]))]
        placed = False
        for start in order.tolist():
            seed = _grow_seed(g, start, size, claimed)
            if seed is not None:
                claim(seed)
                placed = True
                break
        if not placed:
            break

    # 隨機放置剩餘的種子
    if len(seeds) < n1:
        for start in rng.permutation(np.flatnonzero(usable & ~claimed)).tolist():
            if len(seeds) >= n1:
                break
            seed = _grow_seed(g, start, size, claimed)
            if seed is not None:
                claim(seed)

    if len(seeds) < n1:
        message = f"only {len(seeds)} of {n1} disjoint seeds could be placed"
        warnings.append(message)
        logger.warning(message)

    seed_set = SeedSet.from_seeds(g, seeds)
    seed_set.warnings = warnings
    logger.info("Selected %d seed subgraphs of size %d", seed_set.size, size)
    return seed_set


# ----------------------------------------------------------------------
# 分層
# ----------------------------------------------------------------------
@dataclass(eq=False)
class Stratification:
    """
    分層資料

    Attributes:
        k: 子圖大小（狀態大小為 k-1）
        seeds: 種子集合
        dist: 每個頂點到最近種子頂點的跳數（不可達為 inf）
        r_max: ρ 的上界
    """

    k: int
    seeds: SeedSet
    dist: np.ndarray
    r_max: int

    @classmethod
    def build(cls, g: InputGraph, seeds: SeedSet, k: int) -> "Stratification":
        if not seeds.seeds:
            raise InvalidSubgraphError("stratification requires at least one seed")
        if any(len(seed) != k - 1 for seed in seeds.seeds):
            raise InvalidSubgraphError(f"seeds must have exactly {k - 1} vertices")
        dist = multi_source_bfs_dist(g, seeds.vertices)
        finite = dist[np.isfinite(dist)]
        max_dist = int(finite.max()) if finite.size else 0
        r_max = 1 + (k - 1) * (max_dist + 1)
        dist.setflags(write=False)
        logger.debug("Stratification: max distance %d, R_max %d", max_dist, r_max)
        return cls(k=k, seeds=seeds, dist=dist, r_max=r_max)

    @property
    def seed_of(self) -> np.ndarray:
        return self.seeds.seed_of

    @cached_property
    def _dist_list(self) -> List[int]:
        return [int(d) if np.isfinite(d) else -1 for d in self.dist.tolist()]

    @cached_property
    def _seed_list(self) -> List[int]:
        return self.seeds.seed_of.tolist()

    def rho(self, g: InputGraph, s: Cis) -> int:
        """
        ρ(s) = 1 + Σ_{u∈V(s)} (dist(u) + 1{u ∈ V(I₁)∖V*})

        V* 為 V(s) 中落在同一種子內的最大連通子集，同大小時取排序後字典序最小者。

        Raises:
            InvalidSubgraphError: s 含有無法從任何種子到達的頂點
        """
        dist = self._dist_list
        seed_of = self._seed_list
        value = 1
        groups: Dict[int, List[int]] = {}
        for u in s:
            d = dist[u]
            if d < 0:
                raise InvalidSubgraphError(f"state {s} lies in a component without seeds")
            value += d
            sid = seed_of[u]
            if sid >= 0:
                groups.setdefault(sid, []).append(u)
        if not groups:
            return value
        in_seeds = sum(len(members) for members in groups.values())
        return value + in_seeds - len(_largest_connected_part(g, groups.values()))


def _largest_connected_part(g: InputGraph, groups) -> List[int]:
    adj = g.adjacency_sets
    best: Optional[List[int]] = None
    for members in groups:
        remaining = list(members)
        while remaining:
            part = [remaining.pop(0)]
            frontier = list(part)
            while frontier:
                x = frontier.pop()
                linked = [w for w in remaining if w in adj[x]]
                for w in linked:
                    remaining.remove(w)
                    part.append(w)
                    frontier.append(w)
            part.sort()
            if best is None or (-len(part), part) < (-len(best), best):
                best = part
    return best or []


def rho(strat: Stratification, g: InputGraph, s: Cis) -> int:
    """函式形式的 Stratification.rho"""
    return strat.rho(g, s)


# ----------------------------------------------------------------------
# 分層圖與 EPS 檢查（小規模）
# ----------------------------------------------------------------------
@dataclass
class GraphStratum:
    """分層圖 𝒢_r 的摘要：ζ_r 度數、邊數 |ℰ_r| 與連通性"""

    r: int
    num_states: int
    supernode_degree: int
    num_edges: int
    connected: bool

    @property
    def internal_edges(self) -> int:
        """不與 ζ_r 相接的邊數 |J_r|"""
        return self.num_edges - self.supernode_degree

    @property
    def expected_tour_length(self) -> float:
        """Kac：以 ζ_r 為再生點的期望 tour 步數 2|ℰ_r| / deg(ζ_r)"""
        if self.supernode_degree == 0:
            return float("inf")
        return 2.0 * self.num_edges / self.supernode_degree

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "num_states": self.num_states,
            "supernode_degree": self.supernode_degree,
            "num_edges": self.num_edges,
            "connected": self.connected,
        }


def build_graph_stratum(hon: HonGraph, rho_of: Sequence[int], r: int) -> GraphStratum:
    """
    在顯式 HON 上建構 𝒢_r：只保留與 I_r 相接的邊，並將 I_{1:r-1} 收縮為 ζ_r

    Args:
        hon: 顯式 HON[k-1]
        rho_of: 每個 HON 狀態的 ρ 值
        r: 分層編號 (>= 2)
    """
    local: Dict[int, int] = {}
    rows: List[int] = []
    cols: List[int] = []
    supernode_degree = 0

    def node(i: int) -> int:
        # 節點 0 為 ζ_r
        if rho_of[i] < r:
            return 0
        if i not in local:
            local[i] = len(local) + 1
        return local[i]

    for i, j in hon.graph.edges():
        a, b = rho_of[i], rho_of[j]
        if a != r and b != r:
            continue
        if a < r or b < r:
            supernode_degree += 1
        rows.append(node(i))
        cols.append(node(j))

    num_states = sum(1 for value in rho_of if value == r)
    for i, value in enumerate(rho_of):
        if value == r:
            node(i)

    size = len(local) + 1
    if size == 1:
        connected = True
    else:
        matrix = sp.csr_matrix(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size)
        )
        n_comp, _ = csgraph.connected_components(matrix, directed=False)
        connected = n_comp == 1
    return GraphStratum(
        r=r,
        num_states=num_states,
        supernode_degree=supernode_degree,
        num_edges=len(rows),
        connected=connected,
    )


@dataclass
class EpsReport:
    """EPS 檢查報告"""

    k: int
    num_states: int = 0
    strata: List[GraphStratum] = field(default_factory=list)
    unseeded_states: List[Cis] = field(default_factory=list)
    out_of_range_states: List[Cis] = field(default_factory=list)
    no_lower_neighbor: List[Cis] = field(default_factory=list)
    no_descent: List[Cis] = field(default_factory=list)
    isolated_strata: List[int] = field(default_factory=list)
    disconnected_strata: List[int] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not (
            self.unseeded_states
            or self.out_of_range_states
            or self.no_lower_neighbor
            or self.no_descent
            or self.isolated_strata
            or self.disconnected_strata
        )

    def violations(self) -> Dict[str, List[Any]]:
        found = {
            "unseeded_component": [list(s) for s in self.unseeded_states],
            "rho_out_of_range": [list(s) for s in self.out_of_range_states],
            "no_lower_or_equal_neighbor": [list(s) for s in self.no_lower_neighbor],
            "no_descending_neighbor": [list(s) for s in self.no_descent],
            "stratum_without_supernode_edge": list(self.isolated_strata),
            "disconnected_stratum": list(self.disconnected_strata),
        }
        return {name: items for name, items in found.items() if items}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "valid": self.valid,
            "num_states": self.num_states,
            "strata": [s.to_dict() for s in self.strata],
            "violations": self.violations(),
        }

    def to_summary(self) -> str:
        lines = [
            "=" * 50,
            "EPS 檢查報告",
            "=" * 50,
            f"k：{self.k}",
            f"狀態數：{self.num_states}",
            f"分層數：{len(self.strata) + 1}",
            f"結果：{'通過' if self.valid else '違反'}",
        ]
        for name, items in self.violations().items():
            lines.append(f"  - {name}: {len(items)}")
            for item in items[:5]:
                lines.append(f"      {item}")
        lines.append("=" * 50)
        return "\n".join(lines)


def validate_eps(
    g: InputGraph, strat: Stratification, k: int, cap: Optional[int] = None
) -> EpsReport:
    """
    窮舉檢查分層是否保持遍歷性

    檢查項目：
        - 每個 HON 分量都有 ρ=1 的狀態
        - 每個非種子狀態有 ρ 不大於自身的鄰居
        - 每個 ρ=r>1 的狀態有 ρ 更小的鄰居
        - 每個非空分層與較早分層之間有邊
        - 每個分層圖 𝒢_r 連通

    Raises:
        ResourceCapError: CIS[k-1] 數量超過上限
    """
    hon = build_hon(g, k - 1, cap=cap)
    report = EpsReport(k=k, num_states=hon.num_states)
    if hon.num_states == 0:
        return report

    rho_of: List[int] = []
    for state in hon.states:
        try:
            rho_of.append(strat.rho(g, state))
        except InvalidSubgraphError:
            rho_of.append(0)

    # 每個 HON 分量至少要有一個 ρ=1 的狀態
    hon_comp = connected_components(hon.graph)
    seeded_components = {hon_comp[i] for i, value in enumerate(rho_of) if value == 1}
    for i, state in enumerate(hon.states):
        if hon_comp[i] not in seeded_components:
            report.unseeded_states.append(state)
        elif rho_of[i] > strat.r_max:
            report.out_of_range_states.append(state)

    adj = hon.graph.adjacency
    for i, state in enumerate(hon.states):
        value = rho_of[i]
        if value <= 1:
            continue
        neighbor_values = [rho_of[j] for j in adj[i] if rho_of[j] > 0]
        if not any(other <= value for other in neighbor_values):
            report.no_lower_neighbor.append(state)
        if not any(other < value for other in neighbor_values):
            report.no_descent.append(state)

    for r in sorted({value for value in rho_of if value > 1}):
        stratum = build_graph_stratum(hon, rho_of, r)
        report.strata.append(stratum)
        if stratum.supernode_degree == 0:
            report.isolated_strata.append(r)
        if not stratum.connected:
            report.disconnected_strata.append(r)

    if report.valid:
        logger.info("EPS check passed: %d states, %d strata", hon.num_states, len(report.strata) + 1)
    else:
        logger.warning("EPS check failed: %s", sorted(report.violations()))
    return report


__all__ = [
    "SeedSet",
    "select_seeds",
    "Stratification",
    "rho",
    "GraphStratum",
    "build_graph_stratum",
    "EpsReport",
    "validate_eps",
    "FARTHEST_POINT_LIMIT",
]
