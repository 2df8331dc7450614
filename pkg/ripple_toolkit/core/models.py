# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 資料模型

定義 CIS 狀態、計數向量與執行設定的資料結構。
"""

from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Mapping, Optional, Tuple

from ripple_toolkit.exceptions import ConfigurationError

# 以遞增排序的頂點 id 元組表示一個連通誘導子圖
Cis = Tuple[int, ...]

# 標準型位元組字串（十六進位序列化）
PatternKey = bytes

# 模式 -> 累計估計值
CountVector = Dict[PatternKey, float]

# 標準型支援的最大階數
MAX_PATTERN_ORDER = 12


def add_counts(target: CountVector, source: Mapping[PatternKey, float], scale: float = 1.0) -> CountVector:
    """將 source 乘上 scale 後累加到 target（原地）"""
    for key, value in source.items():
        target[key] = target.get(key, 0.0) + scale * value
    return target


@dataclass
class RunConfig:
    """Ripple 估計器執行設定"""

    k: int = 4
    epsilon: float = 0.01
    n1: int = 16
    reservoir_capacity: int = 100_000
    min_tours: int = 256
    max_tours: int = 1_000_000
    max_steps: int = 1_000_000
    workers: int = 1
    rng_seed: int = 0
    batch: Optional[int] = None  # None -> 64 * workers
    rejection_cap: int = 100_000
    attempt_factor: int = 10_000  # 鄰居抽樣提案上限 = attempt_factor * (k-1)^2

    def __post_init__(self):
        if self.batch is None:
            self.batch = 64 * max(1, int(self.workers))
        self.validate()

    def validate(self) -> None:
        """檢查不變量，違反時拋出 ConfigurationError"""
        if self.k < 3:
            raise ConfigurationError(f"k must be >= 3 (got {self.k})")
        if self.k > MAX_PATTERN_ORDER:
            raise ConfigurationError(
                f"k must be <= {MAX_PATTERN_ORDER} (got {self.k})"
            )
        if not self.epsilon > 0:
            raise ConfigurationError(f"epsilon must be > 0 (got {self.epsilon})")
        if self.n1 < 1:
            raise ConfigurationError(f"n1 must be >= 1 (got {self.n1})")
        if self.reservoir_capacity < 1:
            raise ConfigurationError(
                f"reservoir_capacity must be >= 1 (got {self.reservoir_capacity})"
            )
        if self.min_tours < 2:
            raise ConfigurationError(f"min_tours must be >= 2 (got {self.min_tours})")
        if self.max_tours < self.min_tours:
            raise ConfigurationError(
                f"max_tours ({self.max_tours}) must be >= min_tours ({self.min_tours})"
            )
        if self.max_steps < 2:
            raise ConfigurationError(f"max_steps must be >= 2 (got {self.max_steps})")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1 (got {self.workers})")
        if self.batch < 1:
            raise ConfigurationError(f"batch must be >= 1 (got {self.batch})")
        if self.rejection_cap < 1 or self.attempt_factor < 1:
            raise ConfigurationError("rejection_cap and attempt_factor must be >= 1")
        if not 0 <= self.rng_seed < 2**64:
            raise ConfigurationError("rng_seed must fit in 64 unsigned bits")

    @property
    def attempt_cap(self) -> int:
        """HON 鄰居抽樣的提案次數上限"""
        return self.attempt_factor * (self.k - 1) ** 2

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "RunConfig":
        """從字典建立設定；未知欄位或型別錯誤會拋出 ConfigurationError"""
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"Unknown config keys: {sorted(unknown)}")
        try:
            return cls(**{key: value for key, value in data.items() if value is not None})
        except TypeError as e:
            raise ConfigurationError(str(e)) from e
