# -*- coding: utf-8 -*-
"""
Ripple Toolkit - Ripple 估計流程

流程:
    1. 選擇種子並建立分層
    2. 第一層：窮舉種子的 HON 鄰居，精確計算 μ(J₁) 與 β̂_{1,t}
    3. r = 2..R：以 ζ_r 為再生點平行抽樣 tour，直到滿足 ε 停止條件
    4. μ̂ = μ(J₁) + Σ_r d̂(ζ_r) / (2 m_r) · Σ tour 獎勵

分層依序處理；同一分層內由執行緒池平行抽樣 tour，
每個工作執行緒有自己的隨機串流，並在批次結束時由協調者合併。
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ripple_toolkit.core.canonical import classify
from ripple_toolkit.core.graph import InputGraph
from ripple_toolkit.core.hon import StateInfo, hon_neighbors, sample_hon_neighbor, state_info
from ripple_toolkit.core.models import Cis, CountVector, RunConfig, add_counts
from ripple_toolkit.core.subgraph import merge_edge_subgraph
from ripple_toolkit.exceptions import EstimatorError, TourAbortedError
from ripple_toolkit.processors.reservoir import ReservoirMatrix
from ripple_toolkit.processors.stats_collector import (
    FirstStratum,
    RippleResult,
    StratumResult,
    confidence_interval,
)
from ripple_toolkit.processors.stratify import SeedSet, Stratification, select_seeds
from ripple_toolkit.utils.logger import logger

ProgressCallback = Callable[[int, int], None]

# 每個工作執行緒的快取上限（每種快取各自計算）
_WALK_CACHE_LIMIT = 1 << 18


def worker_rng(rng_seed: int, stratum: int, worker: int) -> np.random.Generator:
    """分層 / 工作執行緒專屬的隨機串流"""
    return np.random.default_rng([rng_seed, stratum, worker])


def _edge_reward(g: InputGraph, u: Cis, v: Cis) -> Tuple[bytes, float]:
    key, gam = classify(merge_edge_subgraph(g, u, v))
    return key, 1.0 / gam


class _WalkCache:
    """
    單一執行緒使用的 tour 快取

    ρ 值、sample_hon_neighbor 的狀態資料，以及以頂點聯集為鍵的邊獎勵。
    各快取達到上限時整個清空。
    """

    def __init__(self, g: InputGraph, strat: Stratification, limit: int = _WALK_CACHE_LIMIT):
        self.g = g
        self.strat = strat
        self.limit = limit
        self._rho: Dict[Cis, int] = {}
        self._info: Dict[Cis, StateInfo] = {}
        self._reward: Dict[Cis, Tuple[bytes, float]] = {}

    def rho(self, s: Cis) -> int:
        value = self._rho.get(s)
        if value is None:
            if len(self._rho) >= self.limit:
                self._rho.clear()
            value = self.strat.rho(self.g, s)
            self._rho[s] = value
        return value

    def info(self, s: Cis) -> StateInfo:
        value = self._info.get(s)
        if value is None:
            if len(self._info) >= self.limit:
                self._info.clear()
            value = state_info(self.g, s)
            self._info[s] = value
        return value

    def edge_reward(self, u: Cis, v: Cis) -> Tuple[bytes, float]:
        # u, v 相鄰時 merge_edge_subgraph 只取決於 V(u) ∪ V(v)
        union = tuple(sorted(set(u).union(v)))
        value = self._reward.get(union)
        if value is None:
            if len(self._reward) >= self.limit:
                self._reward.clear()
            value = _edge_reward(self.g, u, v)
            self._reward[union] = value
        return value


# ----------------------------------------------------------------------
# 第一層
# ----------------------------------------------------------------------
def first_stratum_pass(
    g: InputGraph,
    seeds: SeedSet,
    strat: Stratification,
    rmat: ReservoirMatrix,
    rng: np.random.Generator,
) -> FirstStratum:
    """
    精確計算第一層

    對每個種子 u 與其每個 HON 鄰居 v：β̂_{1,ρ(v)} += 1 並將 v 放入 (1, ρ(v))；
    每條與種子相接的 HON 邊的 f(u, v) 只加一次（兩端都是種子時以 u < v 去重）。

    Args:
        g: 輸入圖
        seeds: 種子集合
        strat: 分層
        rmat: reservoir 矩陣（寫入第 1 列）
        rng: 用於 reservoir 插入

    Returns:
        FirstStratum：μ(J₁) 的模式向量、其中種子之間的部分與 |J₁|
    """
    result = FirstStratum()
    for u in seeds.seeds:
        for v in hon_neighbors(g, u):
            t = strat.rho(g, v)
            if t == 1:
                if not u < v:
                    continue
                key, value = _edge_reward(g, u, v)
                result.intra_seed[key] = result.intra_seed.get(key, 0.0) + value
            else:
                rmat.add_crossings(1, t)
                rmat.offer(1, t, v, rng)
                key, value = _edge_reward(g, u, v)
            result.counts[key] = result.counts.get(key, 0.0) + value
            result.num_edges += 1
    logger.info(
        "First stratum: %d seeds, %d HON edges, mu(J1)=%.6g",
        seeds.size,
        result.num_edges,
        result.total,
    )
    return result


# ----------------------------------------------------------------------
# 單一 tour
# ----------------------------------------------------------------------
@dataclass
class TourOutcome:
    """
    一個 tour 的結果

    steps 包含 ζ→X₂ 與回到 ζ 的兩步；有獎勵的邊數為 steps - 2。
    states 只在 record_states=True 時填入，依序為 tour 經過的 𝒢_r 狀態（不含 ζ_r）。
    """

    reward: CountVector = field(default_factory=dict)
    crossings: List[Tuple[int, Cis]] = field(default_factory=list)
    steps: int = 0
    states: List[Cis] = field(default_factory=list)

    @property
    def reward_edges(self) -> int:
        return max(self.steps - 2, 0)


def _start_state(r: int, rmat: ReservoirMatrix, rng: np.random.Generator) -> Cis:
    weights = rmat.inbound(r) * (rmat.inbound_sizes(r) > 0)
    total = weights.sum()
    if total <= 0:
        raise EstimatorError(f"stratum {r} has no start states in its inbound reservoirs")
    q = 1 + int(rng.choice(len(weights), p=weights / total))
    return rmat.cell(q, r).sample_uniform(rng)


def sample_tour(
    g: InputGraph,
    strat: Stratification,
    r: int,
    rmat: ReservoirMatrix,
    rng: np.random.Generator,
    cfg: RunConfig,
    cache: Optional[_WalkCache] = None,
    record_states: bool = False,
) -> TourOutcome:
    """
    在分層圖 𝒢_r 上從 ζ_r 出發抽樣一個 tour

    起點：以 ∝ β̂_{q,r} 選 q，再從 reservoir (q, r) 均勻抽取。
    ρ(u) = r 時自由轉移；ρ(u) > r 時以拒絕抽樣限制在 I_r 內。
    ρ(v) < r 時回到 ζ_r 結束，最後一條邊不計獎勵。

    Args:
        cache: 工作執行緒的快取（None 則為此 tour 建立一個）
        record_states: 是否記錄經過的狀態

    Raises:
        TourAbortedError: 超過 max_steps 或拒絕次數上限
        EstimatorError: 沒有可用的起點
    """
    if cache is None:
        cache = _WalkCache(g, strat)
    rho_of = cache.rho
    info_of = cache.info
    attempt_cap = cfg.attempt_cap
    outcome = TourOutcome()
    reward = outcome.reward

    u = _start_state(r, rmat, rng)
    rho_u = rho_of(u)
    steps = 1
    while True:
        if steps >= cfg.max_steps:
            raise TourAbortedError(f"tour in stratum {r} exceeded {cfg.max_steps} steps", steps=steps)
        if record_states:
            outcome.states.append(u)
        info = info_of(u)
        if rho_u == r:
            v = sample_hon_neighbor(g, u, rng, max_attempts=attempt_cap, info=info)
            rho_v = rho_of(v)
        else:
            for _ in range(cfg.rejection_cap):
                v = sample_hon_neighbor(g, u, rng, max_attempts=attempt_cap, info=info)
                rho_v = rho_of(v)
                if rho_v == r:
                    break
            else:
                raise TourAbortedError(
                    f"no neighbor in stratum {r} within {cfg.rejection_cap} rejections", steps=steps
                )
        steps += 1
        if rho_v < r:
            break
        key, value = cache.edge_reward(u, v)
        reward[key] = reward.get(key, 0.0) + value
        if rho_v > r:
            outcome.crossings.append((rho_v, v))
        u, rho_u = v, rho_v

    outcome.steps = steps
    return outcome


# ----------------------------------------------------------------------
# 單一分層
# ----------------------------------------------------------------------
@dataclass
class _WorkerPartial:
    reward: CountVector = field(default_factory=dict)
    crossings: Dict[int, int] = field(default_factory=dict)
    steps: List[int] = field(default_factory=list)
    aborted: int = 0


def _run_worker_batch(
    g: InputGraph,
    strat: Stratification,
    r: int,
    rmat: ReservoirMatrix,
    cfg: RunConfig,
    rng: np.random.Generator,
    cache: _WalkCache,
    n_tours: int,
) -> _WorkerPartial:
    partial = _WorkerPartial()
    for _ in range(n_tours):
        try:
            outcome = sample_tour(g, strat, r, rmat, rng, cfg, cache=cache)
        except TourAbortedError as e:
            partial.aborted += 1
            logger.debug("Tour aborted after %d steps: %s", e.steps, e)
            continue
        # tour 完成後才寫入跨層狀態
        for t, state in outcome.crossings:
            rmat.offer(r, t, state, rng)
            partial.crossings[t] = partial.crossings.get(t, 0) + 1
        add_counts(partial.reward, outcome.reward)
        partial.steps.append(outcome.steps)
    return partial


def _split(total: int, parts: int) -> List[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def run_stratum(
    g: InputGraph,
    strat: Stratification,
    r: int,
    rmat: ReservoirMatrix,
    cfg: RunConfig,
    executor: Optional[ThreadPoolExecutor] = None,
) -> StratumResult:
    """
    估計分層 r 的貢獻

    每批 cfg.batch 個 tour 分給各工作執行緒；批次結束後檢查
    σ̂/√m ≤ ε·μ̂ 且 m ≥ min_tours，或 m 達到 max_tours。
    結束後 β̂_{r,t} = (跨入 t 的次數) · d̂(ζ_r) / m_r。

    Raises:
        EstimatorError: β̂ > 0 但沒有可用的起點，或中止的 tour 過多
    """
    inbound = rmat.inbound(r)
    deg_hat = float(inbound.sum())
    if deg_hat <= 0 or rmat.inbound_sizes(r).sum() == 0:
        logger.debug("Stratum %d is empty, skipped", r)
        return StratumResult.empty(r, deg_hat=deg_hat)

    workers = cfg.workers
    rngs = [worker_rng(cfg.rng_seed, r, w) for w in range(workers)]
    caches = [_WalkCache(g, strat) for _ in range(workers)]

    reward: CountVector = {}
    crossings: Dict[int, int] = {}
    steps: List[int] = []
    aborted = 0
    m = 0

    while m < cfg.max_tours:
        quota = _split(min(cfg.batch, cfg.max_tours - m), workers)
        if executor is None or workers == 1:
            partials = [
                _run_worker_batch(g, strat, r, rmat, cfg, rngs[w], caches[w], quota[w])
                for w in range(workers)
            ]
        else:
            futures = [
                executor.submit(_run_worker_batch, g, strat, r, rmat, cfg, rngs[w], caches[w], quota[w])
                for w in range(workers)
            ]
            partials = [f.result() for f in futures]

        # 依工作執行緒編號合併，結果與完成順序無關
        for partial in partials:
            add_counts(reward, partial.reward)
            for t, count in partial.crossings.items():
                crossings[t] = crossings.get(t, 0) + count
            steps.extend(partial.steps)
            aborted += partial.aborted
            m += len(partial.steps)

        if aborted > cfg.max_tours:
            raise EstimatorError(f"stratum {r}: {aborted} tours aborted")
        if m < max(cfg.min_tours, 2):
            continue

        estimates = deg_hat / 2.0 * (np.asarray(steps, dtype=np.float64) - 2.0)
        mu = float(estimates.mean())
        sigma = float(estimates.std(ddof=1))
        logger.debug(
            "Stratum %d: m=%d mu=%.6g sigma/sqrt(m)=%.6g target=%.6g",
            r, m, mu, sigma / np.sqrt(m), cfg.epsilon * mu,
        )
        if sigma / np.sqrt(m) <= cfg.epsilon * mu:
            break

    if m == 0:
        raise EstimatorError(f"stratum {r}: no tour completed")

    estimates = deg_hat / 2.0 * (np.asarray(steps, dtype=np.float64) - 2.0)
    scale = deg_hat / (2.0 * m)
    for t, count in crossings.items():
        rmat.beta[r, t] = count
    rmat.scale_row(r, deg_hat / m)

    result = StratumResult(
        r=r,
        deg_hat=deg_hat,
        m_r=m,
        mu_r=reward,
        contribution={key: scale * value for key, value in reward.items()},
        edge_estimate=float(estimates.mean()),
        edge_variance=float(estimates.var(ddof=1)) if m >= 2 else 0.0,
        mean_tour_len=float(np.mean(steps)),
        max_tour_len=int(max(steps)),
        reservoir_pressure=rmat.row_pressure(r),
        aborted_tours=aborted,
        crossings=sum(crossings.values()),
        tour_edge_estimates=estimates.tolist(),
    )
    logger.info(
        "Stratum %d: %d tours, deg_hat=%.6g, contribution=%.6g", r, m, deg_hat, result.total
    )
    return result


# ----------------------------------------------------------------------
# 完整流程
# ----------------------------------------------------------------------
def run(
    g: InputGraph,
    cfg: RunConfig,
    seeds: Optional[SeedSet] = None,
    progress_callback: Optional[ProgressCallback] = None,
) -> RippleResult:
    """
    執行 Ripple 估計

    Args:
        g: 輸入圖
        cfg: 執行設定
        seeds: 指定種子（None 則以 select_seeds 選擇）
        progress_callback: 進度回呼 (r, r_max)

    Returns:
        RippleResult
    """
    cfg.validate()
    start = time.perf_counter()
    result = RippleResult(k=cfg.k, config=cfg.to_dict())

    if seeds is None:
        seeds = select_seeds(g, cfg.n1, cfg.k, worker_rng(cfg.rng_seed, 0, 0))
    for message in seeds.warnings:
        result.warnings.append(message)

    strat = Stratification.build(g, seeds, cfg.k)
    rmat = ReservoirMatrix(strat.r_max, cfg.reservoir_capacity, cfg.k - 1)
    result.num_seeds = seeds.size
    result.r_max = strat.r_max

    result.first = first_stratum_pass(g, seeds, strat, rmat, worker_rng(cfg.rng_seed, 1, 0))
    add_counts(result.counts, result.first.counts)
    if progress_callback:
        progress_callback(1, strat.r_max)

    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        for r in range(2, strat.r_max + 1):
            stratum = run_stratum(g, strat, r, rmat, cfg, executor=executor)
            result.per_stratum.append(stratum)
            add_counts(result.counts, stratum.contribution)
            if stratum.aborted_tours:
                result.add_warning(f"stratum {r}: {stratum.aborted_tours} tours aborted")
            if stratum.reservoir_pressure > 1.0:
                result.add_warning(
                    f"stratum {r}: reservoir oversampled (seen/M = {stratum.reservoir_pressure:.2f})"
                )
            if progress_callback:
                progress_callback(r, strat.r_max)
            if not rmat.beta[:, r + 1 :].any():
                break

    result.reservoirs = rmat.diagnostics()
    result.wall_time = time.perf_counter() - start
    logger.info(
        "Ripple CIS[%d] estimate: %.6g over %d strata in %.2fs",
        cfg.k, result.total, result.strata_used, result.wall_time,
    )
    return result


__all__ = [
    "TourOutcome",
    "first_stratum_pass",
    "sample_tour",
    "run_stratum",
    "run",
    "confidence_interval",
    "worker_rng",
]
