# -*- coding: utf-8 -*-
"""
種子選擇、ρ 分層與 EPS 檢查測試
"""

import json

import networkx as nx
import numpy as np
import pytest

from ripple_toolkit.core.graph import InputGraph
from ripple_toolkit.core.subgraph import is_connected_set
from ripple_toolkit.exceptions import ConfigurationError, InvalidSubgraphError, ResourceCapError
from ripple_toolkit.processors.oracle import build_hon, enumerate_cis
from ripple_toolkit.processors.stratify import (
    SeedSet,
    Stratification,
    build_graph_stratum,
    rho,
    select_seeds,
    validate_eps,
)
from tests.conftest import er_graph, to_input_graph


class TestSeedSet:
    """測試種子集合驗證"""

    def test_from_seeds(self, p4):
        seeds = SeedSet.from_seeds(p4, [(1, 0), (2, 3)])

        assert seeds.seeds == [(0, 1), (2, 3)]
        assert seeds.seed_of.tolist() == [0, 0, 1, 1]
        assert seeds.vertices == [0, 1, 2, 3]
        assert seeds.size == 2

    def test_overlap(self, p4):
        with pytest.raises(InvalidSubgraphError):
            SeedSet.from_seeds(p4, [(0, 1), (1, 2)])

    def test_disconnected_seed(self, p4):
        with pytest.raises(InvalidSubgraphError):
            SeedSet.from_seeds(p4, [(0, 2)])

    def test_mixed_sizes(self, p4):
        with pytest.raises(InvalidSubgraphError):
            SeedSet.from_seeds(p4, [(0,), (2, 3)])

    def test_out_of_range(self, p4):
        with pytest.raises(InvalidSubgraphError):
            SeedSet.from_seeds(p4, [(3, 4)])

    def test_json_round_trip(self, petersen, tmp_path):
        seeds = SeedSet.from_seeds(petersen, [(0, 1), (7, 9)])

        path = seeds.to_json(tmp_path / "seeds.json")
        loaded = SeedSet.from_json(path, petersen)

        assert loaded.seeds == seeds.seeds
        assert json.loads(path.read_text()) == {"seeds": [[0, 1], [7, 9]]}

    def test_json_bad_shape(self, p4, tmp_path):
        path = tmp_path / "seeds.json"
        path.write_text(json.dumps({"seeds": [1, 2]}))

        with pytest.raises(ConfigurationError):
            SeedSet.from_json(path, p4)


class TestSelectSeeds:
    """測試種子選擇"""

    def test_seeds_valid_and_disjoint(self, petersen, rng):
        seeds = select_seeds(petersen, 3, 4, rng)

        assert seeds.size == 3
        used = [v for seed in seeds.seeds for v in seed]
        assert len(used) == len(set(used))
        for seed in seeds.seeds:
            assert len(seed) == 3
            assert is_connected_set(petersen, seed)

    def test_one_seed_per_component(self, two_triangles, rng):
        seeds = select_seeds(two_triangles, 2, 3, rng)

        components = {0 if seed[0] < 3 else 1 for seed in seeds.seeds}
        assert components == {0, 1}

    def test_n1_below_component_count(self, two_triangles, rng):
        with pytest.raises(ConfigurationError):
            select_seeds(two_triangles, 1, 3, rng)

    def test_small_component_skipped(self, rng):
        g = InputGraph.from_edges([(0, 1), (1, 2), (0, 2)], n=4)

        seeds = select_seeds(g, 1, 3, rng)

        assert seeds.size == 1
        assert any("skipped" in message for message in seeds.warnings)

    def test_no_eligible_component(self, k3, rng):
        with pytest.raises(ConfigurationError):
            select_seeds(k3, 1, 5, rng)

    def test_fewer_seeds_than_requested(self, p4, rng):
        seeds = select_seeds(p4, 5, 3, rng)

        assert seeds.size <= 2
        assert any("only" in message for message in seeds.warnings)

    def test_deterministic(self, petersen):
        a = select_seeds(petersen, 3, 3, np.random.default_rng(1))
        b = select_seeds(petersen, 3, 3, np.random.default_rng(1))

        assert a.seeds == b.seeds

    def test_seeds_spread_out(self):
        """最遠點放置：路徑上兩個種子分處兩端"""
        g = to_input_graph(nx.path_graph(30))

        seeds = select_seeds(g, 2, 2, np.random.default_rng(4))

        (a,), (b,) = seeds.seeds
        assert abs(a - b) >= 15


class TestStratification:
    """測試 ρ"""

    @pytest.fixture
    def p4_strat(self, p4):
        return Stratification.build(p4, SeedSet.from_seeds(p4, [(0, 1)]), 3)

    def test_r_max(self, p4_strat):
        assert p4_strat.r_max == 1 + 2 * (2 + 1)

    def test_rho_values(self, p4, p4_strat):
        assert p4_strat.rho(p4, (0, 1)) == 1
        assert p4_strat.rho(p4, (1, 2)) == 2
        assert p4_strat.rho(p4, (2, 3)) == 4
        assert rho(p4_strat, p4, (1, 2)) == 2

    def test_triangle(self, k3):
        strat = Stratification.build(k3, SeedSet.from_seeds(k3, [(0, 1)]), 3)

        assert strat.rho(k3, (0, 2)) == 2
        assert strat.rho(k3, (1, 2)) == 2

    def test_state_spanning_two_seeds(self):
        """跨兩個種子的狀態：只有最大的同種子連通部分不加罰"""
        g = to_input_graph(nx.path_graph(6))
        strat = Stratification.build(g, SeedSet.from_seeds(g, [(0, 1, 2), (3, 4, 5)]), 4)

        assert strat.rho(g, (1, 2, 3)) == 2
        assert strat.rho(g, (2, 3, 4)) == 2
        assert strat.rho(g, (3, 4, 5)) == 1

    def test_rho_one_iff_seed(self, petersen):
        seeds = SeedSet.from_seeds(petersen, [(0, 1, 2), (5, 7, 9)])
        strat = Stratification.build(petersen, seeds, 4)

        for state in enumerate_cis(petersen, 3):
            value = strat.rho(petersen, state)
            assert (value == 1) == (state in seeds.seeds)
            assert 1 <= value <= strat.r_max

    def test_unreachable_state(self, two_triangles):
        strat = Stratification.build(two_triangles, SeedSet.from_seeds(two_triangles, [(0, 1)]), 3)

        with pytest.raises(InvalidSubgraphError):
            strat.rho(two_triangles, (3, 4))

    def test_seed_size_mismatch(self, p4):
        with pytest.raises(InvalidSubgraphError):
            Stratification.build(p4, SeedSet.from_seeds(p4, [(0, 1)]), 4)


class TestGraphStratum:
    """測試分層圖建構"""

    def test_p4_stratum_two(self, p4):
        strat = Stratification.build(p4, SeedSet.from_seeds(p4, [(0, 1)]), 3)
        hon = build_hon(p4, 2)
        rho_of = [strat.rho(p4, s) for s in hon.states]

        stratum = build_graph_stratum(hon, rho_of, 2)

        assert stratum.num_states == 1
        assert stratum.supernode_degree == 1
        assert stratum.num_edges == 2
        assert stratum.internal_edges == 1
        assert stratum.connected
        assert stratum.expected_tour_length == pytest.approx(4.0)

    def test_empty_stratum(self, p4):
        strat = Stratification.build(p4, SeedSet.from_seeds(p4, [(0, 1)]), 3)
        hon = build_hon(p4, 2)
        rho_of = [strat.rho(p4, s) for s in hon.states]

        stratum = build_graph_stratum(hon, rho_of, 3)

        assert stratum.num_edges == 0
        assert stratum.expected_tour_length == float("inf")


class TestValidateEps:
    """測試 EPS 窮舉檢查"""

    def test_p4_valid(self, p4):
        strat = Stratification.build(p4, SeedSet.from_seeds(p4, [(0, 1)]), 3)

        report = validate_eps(p4, strat, 3)

        assert report.valid
        assert report.num_states == 3
        assert [s.r for s in report.strata] == [2, 4]
        assert report.to_dict()["violations"] == {}

    @pytest.mark.parametrize("k", [3, 4])
    def test_connected_graphs_valid(self, petersen, k4, s4, rng, k):
        for g in (petersen, k4, s4):
            strat = Stratification.build(g, select_seeds(g, 1, k, rng), k)

            assert validate_eps(g, strat, k).valid

    def test_er_graph_valid(self, rng):
        g = to_input_graph(er_graph(21, n=20, p=0.3))
        strat = Stratification.build(g, select_seeds(g, 2, 3, rng), 3)

        assert validate_eps(g, strat, 3).valid

    def test_unseeded_component(self, two_triangles):
        strat = Stratification.build(two_triangles, SeedSet.from_seeds(two_triangles, [(0, 1)]), 3)

        report = validate_eps(two_triangles, strat, 3)

        assert not report.valid
        assert sorted(report.unseeded_states) == [(3, 4), (3, 5), (4, 5)]
        assert "unseeded_component" in report.violations()
        assert "違反" in report.to_summary()

    def test_cap(self, petersen):
        strat = Stratification.build(petersen, SeedSet.from_seeds(petersen, [(0, 1)]), 3)

        with pytest.raises(ResourceCapError):
            validate_eps(petersen, strat, 3, cap=3)
