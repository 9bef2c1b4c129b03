import pytest
from networkx.algorithms import isomorphism

from src.core.errors import GraphError
from src.core.generators import (
    complete_graph, cycle_graph, empty_graph, path_graph, small_graph_corpus, star_graph,
)
from src.core.graph import build_graph, disjoint_union, line_graph
from src.recognition.recognition import (
    HCase, classify_h, complexity_statement, contains_induced, find_induced_path, is_claw_free,
    is_h_free, is_pt_free, verify_induced_embedding,
)

PATTERNS = {
    "claw": star_graph(3),
    "P4": path_graph(4),
    "C4": cycle_graph(4),
    "2P2": build_graph(4, [(0, 1), (2, 3)]),
    "K3": complete_graph(3),
    "paw": build_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]),
}


class TestInducedSubgraphs:
    """Test cases for induced-subgraph detection"""

    @pytest.mark.parametrize("name", sorted(PATTERNS))
    def test_agrees_with_networkx_matcher(self, name):
        pattern = PATTERNS[name]
        for graph in small_graph_corpus(6):
            expected = isomorphism.GraphMatcher(
                graph.to_networkx(), pattern.to_networkx()
            ).subgraph_is_isomorphic()
            mapping = contains_induced(graph, pattern)
            assert (mapping is not None) == expected, f"{name} in {graph.edge_list}"
            if mapping is not None:
                assert verify_induced_embedding(graph, pattern, mapping)

    def test_witness_is_sorted_by_pattern_vertex(self, c5):
        mapping = contains_induced(c5, path_graph(3))
        assert list(mapping) == [0, 1, 2]

    def test_verify_rejects_non_induced_map(self, k4):
        # a path mapped into K_4 gains a chord
        assert not verify_induced_embedding(k4, path_graph(3), {0: 0, 1: 1, 2: 2})
        assert not verify_induced_embedding(k4, path_graph(2), {0: 0, 1: 0})
        assert not verify_induced_embedding(k4, path_graph(2), {0: 0})

    def test_empty_and_oversized_patterns(self, k4):
        assert contains_induced(k4, empty_graph(0)) == {}
        assert contains_induced(k4, complete_graph(5)) is None

    def test_is_h_free(self, k33, two_p2):
        assert is_h_free(k33, PATTERNS["K3"])
        result = is_h_free(cycle_graph(6), two_p2)
        assert not result
        assert verify_induced_embedding(cycle_graph(6), two_p2, result.witness)


class TestClawAndPaths:
    """Test cases for claw-freeness and induced paths"""

    def test_claw_is_not_claw_free(self, claw):
        result = is_claw_free(claw)
        assert not result
        assert result.witness == (0, 1, 2, 3)

    def test_neighbourhood_scan_agrees_with_induced_search(self, claw):
        for graph in small_graph_corpus(7):
            scan = is_claw_free(graph)
            assert scan.free == is_h_free(graph, claw).free, graph.edge_list
            if not scan.free:
                centre, *leaves = scan.witness
                assert verify_induced_embedding(graph, claw, dict(enumerate([centre, *leaves])))

    def test_line_graphs_are_claw_free(self, petersen, k5):
        assert is_claw_free(line_graph(petersen)[0])
        assert is_claw_free(line_graph(k5)[0])

    @pytest.mark.parametrize("graph, t, found", [
        (cycle_graph(6), 5, True),
        (cycle_graph(6), 6, False),
        (path_graph(5), 5, True),
        (complete_graph(6), 3, False),
        (path_graph(1), 1, True),
    ])
    def test_find_induced_path(self, graph, t, found):
        path = find_induced_path(graph, t)
        assert (path is not None) == found
        if path is not None:
            mapping = dict(enumerate(path))
            assert verify_induced_embedding(graph, path_graph(t), mapping)

    def test_first_path_in_canonical_order(self, p5):
        assert find_induced_path(p5, 5) == (0, 1, 2, 3, 4)

    def test_path_length_must_be_positive(self, k4):
        with pytest.raises(GraphError):
            find_induced_path(k4, 0)

    def test_is_pt_free(self, c5, k33):
        assert is_pt_free(c5, 5)
        assert not is_pt_free(c5, 4)
        assert is_pt_free(k33, 4)


class TestClassifyH:
    """Test cases for the dichotomy classification of H"""

    @pytest.mark.parametrize("pattern, length", [
        (complete_graph(3), 3),
        (complete_graph(4), 3),
        (cycle_graph(4), 4),
        (cycle_graph(7), 7),
        (disjoint_union(path_graph(2), cycle_graph(5)), 5),
    ])
    def test_cycle_case(self, pattern, length):
        result = classify_h(pattern)
        assert result.case is HCase.CONTAINS_CYCLE
        assert result.cycle_length == length
        assert result.describe() == f"ContainsCycle(s={length})"
        mapping = dict(enumerate(result.witness))
        assert verify_induced_embedding(pattern, cycle_graph(length), mapping)

    def test_claw_case(self, claw):
        result = classify_h(claw)
        assert result.case is HCase.FOREST_WITH_DEGREE3_VERTEX
        assert result.witness == (0, 1, 2, 3)

    def test_spider_is_forest_with_degree3_vertex(self):
        spider = build_graph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        assert classify_h(spider).case is HCase.FOREST_WITH_DEGREE3_VERTEX

    @pytest.mark.parametrize("pattern, ell, t", [
        (build_graph(4, [(0, 1), (2, 3)]), 2, 6),
        (build_graph(5, [(0, 1), (2, 3), (3, 4)]), 2, 7),
        (path_graph(4), 1, 4),
        (path_graph(1), 1, 1),
        (empty_graph(3), 3, 7),
    ])
    def test_linear_forest_case(self, pattern, ell, t):
        result = classify_h(pattern)
        assert result.case is HCase.LINEAR_FOREST
        assert result.components == ell
        assert result.path_bound == t
        assert result.product_bound == ell * pattern.n
        assert result.minimal_path_bound == pattern.n + ell - 1
        assert result.describe() == f"LinearForest(l={ell}, t={t})"

    def test_linear_forest_witness_lists_paths(self):
        result = classify_h(build_graph(5, [(0, 1), (2, 3), (3, 4)]))
        assert result.witness == ((0, 1), (2, 3, 4))

    @pytest.mark.parametrize("pattern", [
        build_graph(4, [(0, 1), (2, 3)]),
        build_graph(5, [(0, 1), (2, 3), (3, 4)]),
        build_graph(6, [(0, 1), (2, 3), (4, 5)]),
        path_graph(4),
    ])
    def test_path_bounds_contain_pattern(self, pattern):
        result = classify_h(pattern)
        for t in (result.path_bound, result.product_bound, result.minimal_path_bound):
            assert contains_induced(path_graph(t), pattern) is not None
        assert contains_induced(path_graph(result.minimal_path_bound - 1), pattern) is None

    def test_empty_pattern_rejected(self):
        with pytest.raises(GraphError, match="empty forbidden graph"):
            classify_h(empty_graph(0))


class TestComplexityStatement:
    """Test cases for the dichotomy verdict text"""

    def test_linear_forest_is_polynomial(self, two_p2):
        text = complexity_statement(classify_h(two_p2))
        assert text.startswith("LinearForest(l=2, t=6)")
        assert "polynomial-time" in text
        assert "P_6-free" in text

    def test_claw_even_k_names_gadget_reduction(self, claw):
        text = complexity_statement(classify_h(claw), 4)
        assert "NP-complete" in text
        assert "claw-free gadget reduction" in text

    def test_claw_odd_k_names_line_graphs(self, claw):
        text = complexity_statement(classify_h(claw), 3)
        assert "line graphs of bipartite graphs" in text

    def test_cycle_is_hard(self):
        text = complexity_statement(classify_h(cycle_graph(5)), 3)
        assert text.startswith("ContainsCycle(s=5)")
        assert "NP-complete" in text
