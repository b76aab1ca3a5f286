# test_graphs.py - 有限単純グラフのテスト

import itertools

import numpy as np
import pytest
from pydantic import ValidationError

from graphontail.core.errors import GraphError
from graphontail.graphs.graph import (
    Graph,
    format_edge_list,
    graph_library,
    is_bipartite,
    parse_edge_list,
    read_edge_list,
)


def _two_colorable(H: Graph) -> bool:
    for colors in itertools.product((0, 1), repeat=H.vertices):
        if all(colors[u] != colors[v] for u, v in H.edges):
            return True
    return False


class TestGraph:
    def test_edges_are_canonical_and_sorted(self):
        H = Graph(vertices=3, edges=[(2, 0), (1, 0)])
        assert H.edges == ((0, 1), (0, 2))

    @pytest.mark.parametrize(
        "edges",
        [[(0, 0)], [(0, 1), (1, 0)], [(0, 3)]],
        ids=["self-loop", "repeated", "out-of-range"],
    )
    def test_rejects_non_simple(self, edges):
        with pytest.raises(ValidationError):
            Graph(vertices=3, edges=edges)

    def test_is_immutable(self, K3):
        with pytest.raises(ValidationError):
            K3.vertices = 4

    def test_disconnected_graph_is_allowed(self):
        H = Graph(vertices=4, edges=[(0, 1), (2, 3)])
        assert H.edge_count == 2
        assert H.max_degree == 1


class TestLibrary:
    def test_triangle(self, K3):
        assert (K3.vertices, K3.edge_count, K3.max_degree) == (3, 3, 2)

    def test_cycle(self, C5):
        assert C5.edge_count == 5
        assert C5.max_degree == 2

    def test_star(self, star2):
        assert star2.vertices == 3
        assert star2.edge_count == 2
        assert star2.max_degree == 2

    def test_complete_bipartite(self):
        H = graph_library("complete_bipartite", 2, 3)
        assert (H.vertices, H.edge_count) == (5, 6)

    @pytest.mark.parametrize(("name", "size"), [("complete", 1), ("cycle", 2), ("path", 1)])
    def test_invalid_size(self, name, size):
        with pytest.raises(GraphError):
            graph_library(name, size)

    def test_unknown_family(self):
        with pytest.raises(GraphError, match="Unknown graph family"):
            graph_library("petersen", 10)

    @pytest.mark.parametrize("name", ["complete", "cycle", "star", "path"])
    @pytest.mark.parametrize("size", [3, 4, 6])
    def test_generated_graphs_respect_bounds(self, name, size):
        H = graph_library(name, size)
        assert H.max_degree <= H.vertices - 1
        assert H.edge_count <= H.vertices * (H.vertices - 1) // 2


class TestBipartite:
    @pytest.mark.parametrize(
        ("name", "size", "expected"),
        [("complete", 3, False), ("cycle", 4, True), ("cycle", 5, False), ("star", 4, True)],
    )
    def test_examples(self, name, size, expected):
        assert is_bipartite(graph_library(name, size)) is expected

    def test_agrees_with_exhaustive_coloring(self, rng):
        for _ in range(150):
            v = int(rng.integers(1, 9))
            pairs = [(u, w) for u in range(v) for w in range(u + 1, v)]
            mask = rng.random(len(pairs)) < 0.35
            H = Graph(vertices=v, edges=[pair for pair, keep in zip(pairs, mask) if keep])
            assert is_bipartite(H) is _two_colorable(H)


class TestEdgeList:
    def test_parse_ignores_comments_and_blank_lines(self):
        H = parse_edge_list("# triangle\n0 1\n\n1 2  # closing edge next\n2 0\n")
        assert H == graph_library("complete", 3)

    def test_format_then_parse(self, C5):
        assert parse_edge_list(format_edge_list(C5)) == C5

    @pytest.mark.parametrize("text", ["", "0\n", "a b\n", "0 0\n", "-1 2\n"])
    def test_parse_errors(self, text):
        with pytest.raises(GraphError):
            parse_edge_list(text)

    def test_read_missing_file(self, tmp_path):
        with pytest.raises(GraphError, match="Cannot read"):
            read_edge_list(tmp_path / "missing.txt")

    def test_read_file(self, tmp_path):
        path = tmp_path / "k4.txt"
        path.write_text("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
        assert read_edge_list(path) == graph_library("complete", 4)

    def test_networkx_round_trip_relabels(self):
        import networkx as nx

        g = nx.Graph([("a", "b"), ("b", "c")])
        H = Graph.from_networkx(g)
        assert H.vertices == 3
        assert H.edges == ((0, 1), (1, 2))
        assert np.array_equal(sorted(dict(H.to_networkx().degree()).values()), [1, 1, 2])
