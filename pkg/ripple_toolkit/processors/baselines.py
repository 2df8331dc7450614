# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 基準估計器

- mcmc_ratio_estimate: HON 上的簡單隨機遊走，估計 μ(ℰ)/|ℰ|
- supernode_tour_estimate: 將所有種子收縮為單一超節點的 tour 估計（R=2 的 Ripple）
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from ripple_toolkit.core.canonical import classify
from ripple_toolkit.core.config import settings
from ripple_toolkit.core.graph import InputGraph
from ripple_toolkit.core.hon import hon_neighbors, sample_hon_neighbor
from ripple_toolkit.core.models import Cis, CountVector, add_counts
from ripple_toolkit.core.subgraph import merge_edge_subgraph
from ripple_toolkit.exceptions import (
    ConfigurationError,
    InvalidSubgraphError,
    ResourceCapError,
    SamplingError,
    TourAbortedError,
)
from ripple_toolkit.processors.stratify import SeedSet
from ripple_toolkit.utils.logger import logger

Reward = Callable[[InputGraph, Cis, Cis], CountVector]

# f₁ ≡ 1 使用的鍵（不會與模式證書衝突，證書至少一個位元組）
EDGE_KEY = b""


def pattern_reward(g: InputGraph, u: Cis, v: Cis) -> CountVector:
    """f(u, v) = 1{模式} / γ"""
    key, gam = classify(merge_edge_subgraph(g, u, v))
    return {key: 1.0 / gam}


def edge_reward(g: InputGraph, u: Cis, v: Cis) -> CountVector:
    """f₁ ≡ 1"""
    return {EDGE_KEY: 1.0}


@dataclass
class BaselineResult:
    """基準估計結果"""

    estimate: float
    counts: CountVector = field(default_factory=dict)
    steps_or_tours: int = 0
    variance: float = 0.0
    exact_part: CountVector = field(default_factory=dict)
    samples: List[float] = field(default_factory=list, repr=False)

    @property
    def standard_error(self) -> float:
        if len(self.samples) < 2:
            return 0.0
        return float(np.sqrt(self.variance / len(self.samples)))

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "steps_or_tours": self.steps_or_tours,
            "variance": self.variance,
            "exact_part": sum(self.exact_part.values()),
        }


def mcmc_ratio_estimate(
    g: InputGraph,
    k: int,
    start: Cis,
    steps: int,
    rng: np.random.Generator,
    reward: Reward = pattern_reward,
    max_attempts: Optional[int] = None,
) -> BaselineResult:
    """
    簡單 HON 隨機遊走的比例估計 μ̂₀ = (1/(t-1)) Σ f(X_i, X_{i+1})

    Args:
        g: 輸入圖
        k: 子圖大小（狀態大小為 k-1）
        start: 起始 CIS[k-1]
        steps: 狀態數 t (>= 2)
        rng: numpy 隨機產生器
        reward: 邊函數 f

    Returns:
        BaselineResult：counts 為 Ĉ[k] / |ℰ^(k-1)| 的估計（分佈，不是計數）

    Raises:
        ConfigurationError: steps < 2
        SamplingError: 狀態沒有鄰居
    """
    start = tuple(sorted(start))
    if len(start) != k - 1:
        raise InvalidSubgraphError(f"start state must have {k - 1} vertices")
    if steps < 2:
        raise ConfigurationError(f"steps must be >= 2 (got {steps})")

    totals: CountVector = {}
    per_edge = np.empty(steps - 1, dtype=np.float64)
    u = start
    for i in range(steps - 1):
        try:
            v = sample_hon_neighbor(g, u, rng, max_attempts=max_attempts)
        except SamplingError as e:
            raise SamplingError(f"random walk stuck at {u}: {e}") from e
        value = reward(g, u, v)
        add_counts(totals, value)
        per_edge[i] = sum(value.values())
        u = v

    n = steps - 1
    counts = {key: value / n for key, value in totals.items()}
    return BaselineResult(
        estimate=float(per_edge.mean()),
        counts=counts,
        steps_or_tours=n,
        variance=float(per_edge.var(ddof=1)) if n >= 2 else 0.0,
    )


def supernode_tour_estimate(
    g: InputGraph,
    k: int,
    seeds: SeedSet,
    m_tours: int,
    rng: np.random.Generator,
    reward: Reward = pattern_reward,
    cap: Optional[int] = None,
    max_steps: int = 1_000_000,
    max_attempts: Optional[int] = None,
) -> BaselineResult:
    """
    單一超節點 tour 估計

    ℰ*（與種子相接的 HON 邊）被精確列舉；從 ζ 出發的 tour 以均勻的 ζ 邊開始，
    回到任一種子時結束。μ̂* = deg(ζ)/(2m) Σ_tours Σ_{j=2}^{|X|-1} f(X_j, X_{j+1})。
    counts = μ(ℰ*) + μ̂*，samples 為每個 tour 的 μ̂* 估計。

    Raises:
        ConfigurationError: m_tours < 1
        ResourceCapError: ℰ* 超過上限
        TourAbortedError: tour 超過 max_steps
    """
    if m_tours < 1:
        raise ConfigurationError(f"m_tours must be >= 1 (got {m_tours})")
    cap = settings.ORACLE_HON_CAP if cap is None else cap
    seed_states = set(seeds.seeds)
    if any(len(s) != k - 1 for s in seed_states):
        raise InvalidSubgraphError(f"seeds must have {k - 1} vertices")

    exact: CountVector = {}
    boundary: List[Cis] = []
    enumerated = 0
    for u in seeds.seeds:
        for v in hon_neighbors(g, u):
            enumerated += 1
            if enumerated > cap:
                raise ResourceCapError(f"seed neighbourhood exceeded cap {cap}", cap=cap)
            if v in seed_states:
                if u < v:
                    add_counts(exact, reward(g, u, v))
                continue
            add_counts(exact, reward(g, u, v))
            boundary.append(v)

    deg_zeta = len(boundary)
    if deg_zeta == 0:
        logger.info("Supernode has no outgoing edges; tour estimate is 0")
        return BaselineResult(
            estimate=sum(exact.values()),
            counts=dict(exact),
            steps_or_tours=m_tours,
            exact_part=dict(exact),
            samples=[0.0] * m_tours,
        )

    tour_totals: CountVector = {}
    samples = np.empty(m_tours, dtype=np.float64)
    for i in range(m_tours):
        x = boundary[int(rng.integers(deg_zeta))]
        tour: CountVector = {}
        steps = 1
        while True:
            if steps >= max_steps:
                raise TourAbortedError(f"supernode tour exceeded {max_steps} steps", steps=steps)
            y = sample_hon_neighbor(g, x, rng, max_attempts=max_attempts)
            steps += 1
            if y in seed_states:
                break
            add_counts(tour, reward(g, x, y))
            x = y
        add_counts(tour_totals, tour)
        samples[i] = deg_zeta / 2.0 * sum(tour.values())

    scale = deg_zeta / (2.0 * m_tours)
    counts = dict(exact)
    add_counts(counts, tour_totals, scale=scale)
    return BaselineResult(
        estimate=sum(counts.values()),
        counts=counts,
        steps_or_tours=m_tours,
        variance=float(samples.var(ddof=1)) if m_tours >= 2 else 0.0,
        exact_part=dict(exact),
        samples=samples.tolist(),
    )


__all__ = [
    "BaselineResult",
    "mcmc_ratio_estimate",
    "supernode_tour_estimate",
    "pattern_reward",
    "edge_reward",
    "EDGE_KEY",
]
