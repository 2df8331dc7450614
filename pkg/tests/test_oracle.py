# -*- coding: utf-8 -*-
"""
精確計數（ESU、HON 建構、誤差指標）測試
"""

import itertools
from collections import Counter

import networkx as nx
import pytest

from ripple_toolkit.core.canonical import describe_pattern, pattern_key
from ripple_toolkit.core.subgraph import SmallGraph, is_connected_set
from ripple_toolkit.exceptions import ConfigurationError, ResourceCapError
from ripple_toolkit.processors.oracle import (
    build_hon,
    compare_counts,
    count_rows,
    enumerate_cis,
    exact_count_vector,
    hon_edge_sum,
)
from tests.conftest import er_graph, to_input_graph


def _key(nx_graph):
    return pattern_key(SmallGraph.from_edges(nx_graph.number_of_nodes(), nx_graph.edges()))


TRIANGLE = _key(nx.complete_graph(3))
PATH3 = _key(nx.path_graph(3))


class TestEnumerateCis:
    """測試 ESU 列舉"""

    def test_k4_triangles(self, k4):
        assert sorted(enumerate_cis(k4, 3)) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]

    def test_no_duplicates_and_matches_bruteforce(self, petersen, er_small):
        for g in (petersen, er_small):
            for k in (1, 2, 3, 4, 5):
                found = list(enumerate_cis(g, k))
                expected = [c for c in itertools.combinations(range(g.n), k) if is_connected_set(g, c)]
                assert len(found) == len(set(found))
                assert sorted(found) == expected

    def test_k1_and_k2(self, p4):
        assert len(list(enumerate_cis(p4, 1))) == 4
        assert len(list(enumerate_cis(p4, 2))) == p4.num_edges

    def test_cap(self, petersen):
        with pytest.raises(ResourceCapError) as exc_info:
            list(enumerate_cis(petersen, 4, cap=10))

        assert exc_info.value.cap == 10

    def test_invalid_k(self, p4):
        with pytest.raises(ConfigurationError):
            list(enumerate_cis(p4, 0))


class TestExactCountVector:
    """測試精確計數向量"""

    def test_k4(self, k4):
        assert exact_count_vector(k4, 3).counts == {TRIANGLE: 4}

    def test_p4(self, p4):
        assert exact_count_vector(p4, 3).counts == {PATH3: 2}

    def test_s4(self, s4):
        """星形 4 葉：C(4,2) 條 3 頂點路徑"""
        assert exact_count_vector(s4, 3).counts == {PATH3: 6}

    def test_petersen_k4_total(self, petersen):
        """Petersen 圖的 4 頂點 CIS 只有路徑與星形（圍長 5）"""
        exact = exact_count_vector(petersen, 4)
        kinds = {describe_pattern(key).is_star: count for key, count in exact.counts.items()}

        assert exact.total == 10 + 15 * 4
        assert kinds == {True: 10, False: 60}

    def test_matches_networkx_isomorphism_classes(self):
        g_nx = er_graph(4, n=15, p=0.3)
        g = to_input_graph(g_nx)

        exact = exact_count_vector(g, 4)
        classes = Counter()
        representatives = []
        for cis in itertools.combinations(range(g.n), 4):
            sub = g_nx.subgraph(cis)
            if not nx.is_connected(sub):
                continue
            for idx, rep in enumerate(representatives):
                if nx.is_isomorphic(rep, sub):
                    classes[idx] += 1
                    break
            else:
                representatives.append(nx.Graph(sub))
                classes[len(representatives) - 1] += 1

        assert sorted(exact.counts.values()) == sorted(classes.values())

    def test_as_count_vector(self, k4):
        assert exact_count_vector(k4, 3).as_count_vector() == {TRIANGLE: 4.0}


class TestHonOracle:
    """測試顯式 HON 與邊函數和"""

    def test_build_hon_path(self, p4):
        hon = build_hon(p4, 2)

        assert hon.states == [(0, 1), (1, 2), (2, 3)]
        assert hon.num_edges == 2

    def test_hon_cap(self, petersen):
        with pytest.raises(ResourceCapError):
            build_hon(petersen, 3, cap=5)

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_edge_sum_recovers_counts(self, petersen, er_small, k):
        """Σ_{HON 邊} 1{模式}/γ 等於 C[k]"""
        for g in (petersen, er_small):
            hon = build_hon(g, k - 1)
            totals = hon_edge_sum(g, hon)
            exact = exact_count_vector(g, k).as_count_vector()

            assert set(totals) == set(exact)
            for key, value in exact.items():
                assert totals[key] == pytest.approx(value)


class TestCompareCounts:
    """測試誤差指標"""

    def test_identical(self):
        metrics = compare_counts({TRIANGLE: 4.0}, {TRIANGLE: 4})

        assert metrics == {"relative_error": 0.0, "l2": 0.0, "linf": 0.0}

    def test_scaled_estimate_has_zero_distribution_error(self):
        metrics = compare_counts({TRIANGLE: 2.0, PATH3: 6.0}, {TRIANGLE: 1.0, PATH3: 3.0})

        assert metrics["relative_error"] == pytest.approx(1.0)
        assert metrics["l2"] == pytest.approx(0.0)

    def test_missing_pattern(self):
        metrics = compare_counts({TRIANGLE: 1.0}, {PATH3: 1.0})

        assert metrics["linf"] == pytest.approx(1.0)
        assert metrics["l2"] == pytest.approx(2 ** 0.5)

    def test_empty(self):
        assert compare_counts({}, {}) == {"relative_error": 0.0, "l2": 0.0, "linf": 0.0}

    def test_count_rows(self, k4):
        rows = count_rows(exact_count_vector(k4, 3).as_count_vector())

        assert rows == [
            {"pattern_hex": TRIANGLE.hex(), "order": 3, "edges": 3, "density": 1.0, "is_star": False, "estimate": 4.0}
        ]
