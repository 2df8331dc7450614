# -*- coding: utf-8 -*-
"""
Ripple Toolkit - Reservoir 矩陣

跨層狀態的固定容量均勻樣本（Algorithm R），以上三角 R×R 矩陣排列。
每個格子有一個計數器決定插入順序；同一槽位的衝突由較大的計數值勝出。
"""

import threading
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ripple_toolkit.core.models import Cis
from ripple_toolkit.exceptions import ConfigurationError, EstimatorError, SamplingError

# 儲存空間依實際插入量倍增，最多到 capacity
_INITIAL_ROWS = 16


class Reservoir:
    """
    固定容量的均勻不放回樣本

    Attributes:
        capacity: 容量 M
        width: 每個狀態的頂點數
        seen: 已提供的狀態數
    """

    def __init__(self, capacity: int, width: int):
        if capacity < 0:
            raise ConfigurationError(f"reservoir capacity must be >= 0 (got {capacity})")
        self.capacity = capacity
        self.width = width
        self.seen = 0
        self._items = np.empty((min(capacity, _INITIAL_ROWS), width), dtype=np.int64)
        self._stamps = np.zeros(len(self._items), dtype=np.int64)
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return min(self.seen, self.capacity)

    @property
    def retained(self) -> int:
        return len(self)

    @property
    def pressure(self) -> float:
        """seen / M，大於 1 表示重複抽樣可能引入偏差"""
        if self.capacity == 0:
            return float("inf") if self.seen else 0.0
        return self.seen / self.capacity

    def _ensure_rows(self, rows: int) -> None:
        if rows <= len(self._items):
            return
        size = min(self.capacity, max(rows, 2 * len(self._items)))
        items = np.empty((size, self.width), dtype=np.int64)
        stamps = np.zeros(size, dtype=np.int64)
        items[: len(self._items)] = self._items
        stamps[: len(self._stamps)] = self._stamps
        self._items, self._stamps = items, stamps

    def offer(self, item: Cis, rng: np.random.Generator) -> bool:
        """
        提供一個狀態

        計數器遞增後，以 min(1, M/seen) 的機率寫入均勻隨機的槽位。

        Args:
            item: 狀態
            rng: 呼叫端的隨機產生器

        Returns:
            bool: 是否寫入
        """
        with self._lock:
            self.seen += 1
            stamp = self.seen

        if stamp <= self.capacity:
            slot = stamp - 1
        else:
            slot = int(rng.integers(stamp))
            if slot >= self.capacity:
                return False

        with self._lock:
            self._ensure_rows(slot + 1)
            if stamp > self._stamps[slot]:
                self._items[slot] = item
                self._stamps[slot] = stamp
                return True
        return False

    def sample_uniform(self, rng: np.random.Generator) -> Cis:
        """
        從目前的樣本均勻抽取一個狀態（放回）

        Raises:
            SamplingError: reservoir 為空
        """
        size = len(self)
        if size == 0:
            raise SamplingError("cannot sample from an empty reservoir")
        row = self._items[int(rng.integers(size))]
        return tuple(row.tolist())

    @property
    def items(self) -> List[Cis]:
        return [tuple(row) for row in self._items[: len(self)].tolist()]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seen": self.seen,
            "retained": self.retained,
            "capacity": self.capacity,
            "pressure": round(self.pressure, 6),
        }


def offer(res: Reservoir, item: Cis, rng: np.random.Generator) -> bool:
    return res.offer(item, rng)


def sample_uniform(res: Reservoir, rng: np.random.Generator) -> Cis:
    return res.sample_uniform(rng)


class ReservoirMatrix:
    """
    上三角 reservoir 矩陣與跨層邊數估計 β̂

    cells[(q, t)] (q < t) 保存從 I_q 走到 I_t 時記錄的 I_t 狀態；
    beta[q, t] 為 I_q 與 I_t 之間 HON 邊數的估計。
    """

    def __init__(self, r_max: int, capacity: int, width: int):
        self.r_max = r_max
        self.capacity = capacity
        self.width = width
        self.beta = np.zeros((r_max + 1, r_max + 1), dtype=np.float64)
        self._cells: Dict[Tuple[int, int], Reservoir] = {}
        self._lock = threading.Lock()

    def _check(self, q: int, t: int) -> None:
        if not 1 <= q < t <= self.r_max:
            raise EstimatorError(f"reservoir cell ({q}, {t}) outside 1 <= q < t <= {self.r_max}")

    def cell(self, q: int, t: int) -> Reservoir:
        self._check(q, t)
        res = self._cells.get((q, t))
        if res is None:
            with self._lock:
                res = self._cells.setdefault((q, t), Reservoir(self.capacity, self.width))
        return res

    def get(self, q: int, t: int) -> Optional[Reservoir]:
        return self._cells.get((q, t))

    def offer(self, q: int, t: int, item: Cis, rng: np.random.Generator) -> bool:
        return self.cell(q, t).offer(item, rng)

    def add_crossings(self, q: int, t: int, count: float = 1.0) -> None:
        self._check(q, t)
        with self._lock:
            self.beta[q, t] += count

    def inbound(self, r: int) -> np.ndarray:
        """β̂_{q,r}，q = 1..r-1（索引 0 對應 q=1）"""
        return self.beta[1:r, r].copy()

    def inbound_sizes(self, r: int) -> np.ndarray:
        sizes = []
        for q in range(1, r):
            res = self._cells.get((q, r))
            sizes.append(len(res) if res is not None else 0)
        return np.asarray(sizes, dtype=np.int64)

    def scale_row(self, r: int, factor: float) -> None:
        """β̂_{r,t} *= factor，t > r"""
        self.beta[r, r + 1 :] *= factor

    def row_pressure(self, r: int) -> float:
        """max_t seen/M，t > r"""
        values = [res.pressure for (q, _), res in self._cells.items() if q == r]
        return max(values, default=0.0)

    def diagnostics(self) -> List[Dict[str, Any]]:
        """每個非空格子的 seen / retained / capacity / pressure"""
        rows = []
        for (q, t) in sorted(self._cells):
            entry = {"q": q, "t": t, "beta": float(self.beta[q, t])}
            entry.update(self._cells[(q, t)].to_dict())
            rows.append(entry)
        return rows


__all__ = ["Reservoir", "ReservoirMatrix", "offer", "sample_uniform"]
