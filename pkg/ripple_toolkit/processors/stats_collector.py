# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 估計結果統計

每個分層的 tour 統計與整體 Ripple 估計結果，
提供字典序列化與文字摘要報告。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from ripple_toolkit.core.models import CountVector
from ripple_toolkit.exceptions import ConfigurationError, EstimatorError
from ripple_toolkit.processors.oracle import count_rows
from ripple_toolkit.utils.logger import logger

CI_LEVEL = 0.95


def confidence_interval(tour_estimates: Sequence[float], level: float = CI_LEVEL) -> Tuple[float, float]:
    """
    CLT 信賴區間 mean ± z·σ̂/√m

    Raises:
        EstimatorError: 少於兩個樣本
        ConfigurationError: level 不在 (0, 1)
    """
    values = np.asarray(tour_estimates, dtype=np.float64)
    if len(values) < 2:
        raise EstimatorError("confidence_interval requires at least 2 tour estimates")
    if not 0 < level < 1:
        raise ConfigurationError("level must lie in (0, 1)")
    z = stats.norm.ppf(0.5 + level / 2.0)
    mean = float(values.mean())
    half = float(z * values.std(ddof=1) / np.sqrt(len(values)))
    return mean - half, mean + half


@dataclass
class StratumResult:
    """單一分層的統計資料"""

    r: int
    deg_hat: float = 0.0
    m_r: int = 0
    mu_r: CountVector = field(default_factory=dict)
    contribution: CountVector = field(default_factory=dict)
    edge_estimate: float = 0.0
    edge_variance: float = 0.0
    mean_tour_len: float = 0.0
    max_tour_len: int = 0
    reservoir_pressure: float = 0.0
    aborted_tours: int = 0
    crossings: int = 0
    skipped: bool = False
    tour_edge_estimates: List[float] = field(default_factory=list, repr=False)

    @classmethod
    def empty(cls, r: int, deg_hat: float = 0.0) -> "StratumResult":
        """空分層（略過）"""
        return cls(r=r, deg_hat=deg_hat, skipped=True)

    @property
    def total(self) -> float:
        return sum(self.contribution.values())

    @property
    def standard_error(self) -> float:
        if self.m_r < 2:
            return 0.0
        return float(np.sqrt(self.edge_variance / self.m_r))

    def edge_interval(self, level: float = CI_LEVEL) -> Optional[Tuple[float, float]]:
        """edge_estimate 的信賴區間；略過或少於兩個 tour 時為 None"""
        if self.skipped or len(self.tour_edge_estimates) < 2:
            return None
        return confidence_interval(self.tour_edge_estimates, level)

    def to_dict(self) -> Dict[str, Any]:
        interval = self.edge_interval()
        return {
            "r": self.r,
            "skipped": self.skipped,
            "deg_hat": self.deg_hat,
            "m_r": self.m_r,
            "total": self.total,
            "edge_estimate": self.edge_estimate,
            "edge_variance": self.edge_variance,
            "ci_low": interval[0] if interval else None,
            "ci_high": interval[1] if interval else None,
            "mean_tour_len": round(self.mean_tour_len, 6),
            "max_tour_len": self.max_tour_len,
            "reservoir_pressure": round(self.reservoir_pressure, 6),
            "aborted_tours": self.aborted_tours,
            "crossings": self.crossings,
        }


@dataclass
class FirstStratum:
    """第一層的精確計算結果"""

    counts: CountVector = field(default_factory=dict)
    intra_seed: CountVector = field(default_factory=dict)
    num_edges: int = 0

    @property
    def total(self) -> float:
        return sum(self.counts.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": 1,
            "exact": True,
            "total": self.total,
            "intra_seed_total": sum(self.intra_seed.values()),
            "num_edges": self.num_edges,
        }


@dataclass
class RippleResult:
    """Ripple 估計結果"""

    k: int
    counts: CountVector = field(default_factory=dict)
    first: FirstStratum = field(default_factory=FirstStratum)
    per_stratum: List[StratumResult] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)
    num_seeds: int = 0
    r_max: int = 0
    wall_time: float = 0.0
    warnings: List[str] = field(default_factory=list)
    reservoirs: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def total(self) -> float:
        """|𝒱^(k)| 估計，與各模式估計共用同一個累加器"""
        return sum(self.counts.values())

    @property
    def strata_used(self) -> int:
        return 1 + sum(1 for s in self.per_stratum if not s.skipped)

    @property
    def total_tours(self) -> int:
        return sum(s.m_r for s in self.per_stratum)

    @property
    def edge_estimate(self) -> float:
        """HON[k-1] 邊數估計：第一層精確值加上各層 f₁ 估計"""
        return self.first.num_edges + sum(s.edge_estimate for s in self.per_stratum)

    def edge_interval(self, level: float = CI_LEVEL) -> Tuple[float, float]:
        """
        HON[k-1] 邊數的信賴區間

        第一層為精確值；其餘各層視為獨立，變異數相加。
        """
        variance = sum(
            s.edge_variance / s.m_r for s in self.per_stratum
            if not s.skipped and s.m_r >= 2
        )
        half = float(stats.norm.ppf(0.5 + level / 2.0) * np.sqrt(variance))
        return self.edge_estimate - half, self.edge_estimate + half

    def add_warning(self, message: str) -> None:
        self.warnings.append(message)
        logger.warning(message)

    def count_rows(self) -> List[Dict[str, Any]]:
        return count_rows(self.counts)

    def to_dict(self, include_reservoirs: bool = False) -> Dict[str, Any]:
        """輸出 JSON 結構（不含 wall_time，見 timing）"""
        data = {
            "config": dict(self.config),
            "total": self.total,
            "counts": self.count_rows(),
            "strata": [self.first.to_dict()] + [s.to_dict() for s in self.per_stratum],
            "warnings": list(self.warnings),
            "strata_used": self.strata_used,
            "num_seeds": self.num_seeds,
            "r_max": self.r_max,
            "edge_estimate": self.edge_estimate,
            "edge_ci": list(self.edge_interval()),
        }
        if include_reservoirs:
            data["reservoirs"] = list(self.reservoirs)
        return data

    def timing(self) -> Dict[str, Any]:
        return {"wall_time": round(self.wall_time, 6)}

    def to_summary(self, top: Optional[int] = 10) -> str:
        """生成摘要報告"""
        lines = [
            "=" * 50,
            f"Ripple CIS[{self.k}] 估計報告",
            "=" * 50,
            f"估計總數：{self.total:,.2f}",
            f"模式數：{len(self.counts)}",
            f"種子數：{self.num_seeds}",
            f"使用分層：{self.strata_used} / {self.r_max}",
            f"總 tour 數：{self.total_tours:,}",
            "HON 邊數估計：{:,.2f}（95% CI {:,.2f} ~ {:,.2f}）".format(
                self.edge_estimate, *self.edge_interval()
            ),
            f"執行時間：{self.wall_time:.2f} 秒",
        ]
        rows = self.count_rows()
        if rows:
            lines.append("")
            for row in rows[:top]:
                lines.append(
                    f"  {row['pattern_hex']}  order={row['order']} edges={row['edges']}  {row['estimate']:,.2f}"
                )
            if top is not None and len(rows) > top:
                lines.append(f"  ... 還有 {len(rows) - top} 個模式")
        if self.warnings:
            lines.extend(["", f"警告數：{len(self.warnings)}"])
            for w in self.warnings[:5]:
                lines.append(f"  - {w}")
        lines.append("=" * 50)
        return "\n".join(lines)


__all__ = ["CI_LEVEL", "confidence_interval", "StratumResult", "FirstStratum", "RippleResult"]
