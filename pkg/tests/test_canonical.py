# -*- coding: utf-8 -*-
"""
標準型與模式分類測試
"""

import itertools

import networkx as nx
import numpy as np
import pytest

from ripple_toolkit.core.canonical import (
    classify,
    coarsen_counts,
    decode_key,
    describe_pattern,
    density_bucket,
    key_from_hex,
    pattern_class,
    pattern_key,
    sorted_counts,
)
from ripple_toolkit.core.subgraph import SmallGraph, induce
from ripple_toolkit.exceptions import ConfigurationError, InvalidSubgraphError
from tests.conftest import to_input_graph


def _small(nx_graph: nx.Graph, labels=None) -> SmallGraph:
    nx_graph = nx.convert_node_labels_to_integers(nx_graph)
    return SmallGraph.from_edges(nx_graph.number_of_nodes(), nx_graph.edges(), labels)


def _to_nx(sg: SmallGraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(sg.order))
    graph.add_edges_from(sg.edges())
    return graph


class TestPatternKey:
    """測試標準型證書"""

    def test_invariant_under_permutation(self):
        """測試任意重新編號得到相同證書"""
        rng = np.random.default_rng(0)
        sg = _small(nx.gnp_random_graph(8, 0.4, seed=2))
        key = pattern_key(sg)

        for _ in range(20):
            perm = rng.permutation(sg.order).tolist()
            assert pattern_key(sg.permuted(perm)) == key

    def test_distinguishes_path_and_star(self):
        assert pattern_key(_small(nx.path_graph(4))) != pattern_key(_small(nx.star_graph(3)))

    def test_all_graphs_of_order_five(self):
        """測試 5 階連通圖：證書相等若且唯若同構（networkx 交叉檢查）"""
        graphs = []
        for edges in itertools.combinations(itertools.combinations(range(5), 2), 6):
            graph = nx.Graph(list(edges))
            if graph.number_of_nodes() == 5 and nx.is_connected(graph):
                graphs.append(graph)
        keys = [pattern_key(_small(graph)) for graph in graphs]

        for (ga, ka), (gb, kb) in itertools.combinations(zip(graphs[:60], keys[:60]), 2):
            assert (ka == kb) == nx.is_isomorphic(ga, gb)

    def test_labels_distinguish(self):
        """測試標籤參與證書"""
        plain = _small(nx.path_graph(3), labels=[0, 0, 0])
        end_label = _small(nx.path_graph(3), labels=[1, 0, 0])
        mid_label = _small(nx.path_graph(3), labels=[0, 1, 0])

        assert len({pattern_key(plain), pattern_key(end_label), pattern_key(mid_label)}) == 3
        assert pattern_key(end_label) == pattern_key(_small(nx.path_graph(3), labels=[0, 0, 1]))

    def test_regular_graph_twins(self, petersen_nx):
        """測試高度對稱的圖（Petersen）在重新編號下穩定"""
        sg = _small(petersen_nx)
        mapping = [3, 7, 0, 9, 1, 4, 8, 2, 6, 5]

        assert pattern_key(sg) == pattern_key(sg.permuted(mapping))

    def test_order_limit(self):
        with pytest.raises(InvalidSubgraphError):
            pattern_key(_small(nx.path_graph(13)))

    def test_decode_round_trip_is_isomorphic(self):
        sg = _small(nx.lollipop_graph(3, 2))

        decoded = decode_key(pattern_key(sg))

        assert nx.is_isomorphic(_to_nx(decoded), _to_nx(sg))
        assert pattern_key(decoded) == pattern_key(sg)

    def test_hex(self):
        key = pattern_key(_small(nx.complete_graph(3)))

        assert key_from_hex(key.hex()) == key


class TestClassify:
    """測試 classify"""

    def test_returns_key_and_gamma(self, k4):
        key, gam = classify(induce(k4, (0, 1, 2)))

        assert key == pattern_key(induce(k4, (0, 1, 3)))
        assert gam == 3


class TestPatternDescription:
    """測試模式描述與粗分類"""

    def test_describe_triangle(self):
        info = describe_pattern(pattern_key(_small(nx.complete_graph(3))))

        assert info.order == 3
        assert info.edges == 3
        assert info.density == pytest.approx(1.0)
        assert not info.is_star

    def test_describe_star(self):
        info = describe_pattern(pattern_key(_small(nx.star_graph(3))))

        assert info.is_star
        assert info.degree_sequence == (3, 1, 1, 1)

    def test_path3_is_star(self):
        """3 頂點路徑也是星形"""
        assert describe_pattern(pattern_key(_small(nx.path_graph(3)))).is_star

    @pytest.mark.parametrize(
        "density, bucket",
        [(0.0, "empty"), (0.25, "sparse"), (0.3, "medium"), (0.5, "medium"), (0.6, "dense"), (1.0, "very-dense")],
    )
    def test_density_bucket(self, density, bucket):
        assert density_bucket(density) == bucket

    def test_pattern_class_relations(self):
        key = pattern_key(_small(nx.star_graph(4)))

        assert pattern_class(key) == key.hex()
        assert pattern_class(key, "star") == "star"
        assert pattern_class(key, "density") == "medium"

    def test_unknown_relation(self):
        with pytest.raises(ConfigurationError):
            pattern_class(pattern_key(_small(nx.path_graph(3))), "bogus")

    def test_coarsen_counts(self):
        star = pattern_key(_small(nx.star_graph(3)))
        path = pattern_key(_small(nx.path_graph(4)))
        clique = pattern_key(_small(nx.complete_graph(4)))

        folded = coarsen_counts({star: 2.0, path: 3.0, clique: 1.0}, "star")

        assert folded == {"star": 2.0, "non-star": 4.0}

    def test_sorted_counts_order(self):
        clique = pattern_key(_small(nx.complete_graph(3)))
        path = pattern_key(_small(nx.path_graph(3)))

        ordered = sorted_counts({clique: 1.0, path: 2.0})

        assert [key for key, _ in ordered] == [path, clique]


class TestInducedKeys:
    """測試輸入圖上的誘導子圖分類"""

    def test_k4_triangles_share_key(self, k4):
        keys = {pattern_key(induce(k4, cis)) for cis in itertools.combinations(range(4), 3)}

        assert len(keys) == 1

    def test_labelled_graph(self):
        g = to_input_graph(nx.path_graph(4), labels=[1, 0, 0, 1])

        assert pattern_key(induce(g, (0, 1, 2))) == pattern_key(induce(g, (1, 2, 3)))
        assert pattern_key(induce(g, (0, 1))) != pattern_key(induce(g, (1, 2)))
