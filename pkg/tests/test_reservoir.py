# -*- coding: utf-8 -*-
"""
Reservoir 與 reservoir 矩陣測試
"""

import threading

import numpy as np
import pytest

from ripple_toolkit.exceptions import ConfigurationError, EstimatorError, SamplingError
from ripple_toolkit.processors.reservoir import Reservoir, ReservoirMatrix, offer, sample_uniform


class TestReservoir:
    """測試固定容量均勻樣本"""

    def test_under_capacity_keeps_everything(self, rng):
        res = Reservoir(capacity=100, width=2)
        items = [(i, i + 1) for i in range(40)]

        for item in items:
            assert res.offer(item, rng)

        assert len(res) == 40
        assert res.items == items
        assert res.pressure == pytest.approx(0.4)

    def test_over_capacity(self, rng):
        res = Reservoir(capacity=5, width=1)

        for i in range(50):
            offer(res, (i,), rng)

        assert len(res) == 5
        assert res.seen == 50
        assert res.pressure == pytest.approx(10.0)
        assert len(set(res.items)) == 5

    def test_sample_from_empty(self, rng):
        with pytest.raises(SamplingError):
            Reservoir(capacity=3, width=2).sample_uniform(rng)

    def test_sample_returns_stored_item(self, rng):
        res = Reservoir(capacity=3, width=3)
        res.offer((1, 2, 3), rng)

        assert sample_uniform(res, rng) == (1, 2, 3)

    def test_inclusion_probability_uniform(self):
        """每個項目被保留的機率為 M / N"""
        rng = np.random.default_rng(99)
        capacity, stream, trials = 10, 100, 3000
        hits = np.zeros(stream)
        for _ in range(trials):
            res = Reservoir(capacity=capacity, width=1)
            for i in range(stream):
                res.offer((i,), rng)
            for (i,) in res.items:
                hits[i] += 1

        freq = hits / trials
        assert np.abs(freq - capacity / stream).max() < 0.035

    def test_concurrent_offers(self):
        res = Reservoir(capacity=50, width=2)

        def worker(seed):
            rng = np.random.default_rng(seed)
            for i in range(1000):
                res.offer((seed, i), rng)

        threads = [threading.Thread(target=worker, args=(s,)) for s in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        assert res.seen == 4000
        assert len(res) == 50
        assert len(set(res.items)) == 50

    def test_negative_capacity(self):
        with pytest.raises(ConfigurationError):
            Reservoir(capacity=-1, width=2)

    def test_to_dict(self, rng):
        res = Reservoir(capacity=4, width=1)
        res.offer((0,), rng)

        assert res.to_dict() == {"seen": 1, "retained": 1, "capacity": 4, "pressure": 0.25}


class TestReservoirMatrix:
    """測試 reservoir 矩陣與 β̂"""

    def test_cell_bounds(self):
        rmat = ReservoirMatrix(r_max=4, capacity=10, width=2)

        for q, t in [(0, 1), (2, 2), (3, 2), (1, 5)]:
            with pytest.raises(EstimatorError):
                rmat.cell(q, t)

    def test_inbound(self, rng):
        rmat = ReservoirMatrix(r_max=4, capacity=10, width=2)
        rmat.add_crossings(1, 3, 2.0)
        rmat.add_crossings(2, 3, 1.0)
        rmat.offer(1, 3, (0, 1), rng)

        assert rmat.inbound(3).tolist() == [2.0, 1.0]
        assert rmat.inbound_sizes(3).tolist() == [1, 0]
        assert rmat.get(2, 3) is None

    def test_scale_row(self):
        rmat = ReservoirMatrix(r_max=4, capacity=10, width=2)
        rmat.beta[2, 3] = 4.0
        rmat.beta[2, 4] = 2.0
        rmat.beta[1, 2] = 7.0

        rmat.scale_row(2, 0.5)

        assert rmat.beta[2, 3] == 2.0
        assert rmat.beta[2, 4] == 1.0
        assert rmat.beta[1, 2] == 7.0

    def test_diagnostics(self, rng):
        rmat = ReservoirMatrix(r_max=3, capacity=2, width=1)
        rmat.add_crossings(1, 2, 3.0)
        for i in range(3):
            rmat.offer(1, 2, (i,), rng)

        (entry,) = rmat.diagnostics()

        assert entry == {"q": 1, "t": 2, "beta": 3.0, "seen": 3, "retained": 2, "capacity": 2, "pressure": 1.5}
        assert rmat.row_pressure(1) == pytest.approx(1.5)
        assert rmat.row_pressure(2) == 0.0


@pytest.mark.slow
class TestReservoirStress:
    """多執行緒大量插入"""

    def test_eight_threads_million_offers(self):
        capacity, per_thread = 10_000, 1_000_000
        res = Reservoir(capacity=capacity, width=2)

        def worker(seed):
            rng = np.random.default_rng(seed)
            for i in range(per_thread):
                res.offer((seed, i), rng)

        threads = [threading.Thread(target=worker, args=(s,)) for s in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        items = res.items
        assert res.seen == 8 * per_thread
        assert len(items) == capacity
        assert len(set(items)) == capacity
        assert all(0 <= seed < 8 and 0 <= i < per_thread for seed, i in items)
