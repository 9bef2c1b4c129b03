import logging
import random

import networkx as nx
import pytest

from src.colouring.colouring import validate_colouring
from src.config import config
from src.core.errors import GraphError, InputError
from src.core.generators import (
    complete_graph, cycle_graph, empty_graph, path_graph, small_graph_corpus, star_graph,
)
from src.core.graph import complement, disjoint_union, from_networkx, is_connected
from src.recognition.recognition import is_pt_free
from src.tractable.tractable import (
    CheckStatus, PtVerdict, camby_schaudt_check, decide_pt_free, dominating_size_bound_holds,
    is_dominating, min_connected_dominating_set, min_dominating_set,
    minimum_connected_dominating_sets, size_bound, spanning_complete_bipartite,
)


def _cograph(n, rng, join):
    """Random P_4-free graph on n vertices built from joins and disjoint unions"""
    if n == 1:
        return empty_graph(1)
    a = rng.randint(1, n - 1)
    left = _cograph(a, rng, rng.random() < 0.5)
    right = _cograph(n - a, rng, rng.random() < 0.5)
    if join:
        return complement(disjoint_union(complement(left), complement(right)))
    return disjoint_union(left, right)


class TestSizeBound:
    """Test cases for the f(k, t) recursion"""

    @pytest.mark.parametrize("k, t, value", [
        (3, 4, 8), (3, 6, 32), (4, 6, 50), (3, 5, 32), (4, 4, 10), (3, 1, 8), (3, 8, 128),
    ])
    def test_values(self, k, t, value):
        assert size_bound(k, t).value == value

    def test_monotone(self):
        for k in range(3, 7):
            for t in range(1, 12):
                assert size_bound(k, t + 1).value >= size_bound(k, t).value
                assert size_bound(k + 1, t).value >= size_bound(k, t).value
                assert size_bound(k, t).value >= 2 * (k + 1)

    @pytest.mark.parametrize("k, t", [(2, 4), (3, 0)])
    def test_preconditions(self, k, t):
        with pytest.raises(InputError):
            size_bound(k, t)


class TestDominatingSets:
    """Test cases for dominating and connected dominating sets"""

    @pytest.mark.parametrize("graph, size", [
        (star_graph(5), 1), (path_graph(5), 3), (cycle_graph(6), 4), (complete_graph(4), 1),
    ])
    def test_minimum_connected_dominating_set_size(self, graph, size):
        found = min_connected_dominating_set(graph)
        assert len(found) == size
        assert is_dominating(graph, found)
        assert is_connected(graph, found)

    def test_path_uses_interior_vertices(self, p5):
        assert min_connected_dominating_set(p5) == frozenset({1, 2, 3})

    def test_all_minimum_sets_of_c6(self):
        found = minimum_connected_dominating_sets(cycle_graph(6))
        # any four consecutive vertices
        assert len(found) == 6
        assert found[0] == frozenset({0, 1, 2, 3})

    def test_disconnected_graph_rejected(self, two_p2):
        with pytest.raises(GraphError, match="graph not connected"):
            min_connected_dominating_set(two_p2)

    def test_vertex_limit(self, mocker):
        mocker.patch.object(config.tractable, "mcds_max_vertices", 5)
        with pytest.raises(InputError, match="limited to 5 vertices"):
            min_connected_dominating_set(path_graph(6))

    def test_min_dominating_set(self):
        assert len(min_dominating_set(cycle_graph(6))) == 2
        assert min_dominating_set(cycle_graph(7), limit=2) is None
        assert min_dominating_set(empty_graph(0)) == frozenset()

    def test_connected_p4_free_graphs_have_spanning_complete_bipartite(self):
        checked = 0
        for graph in small_graph_corpus(7, connected=True):
            if graph.n < 2 or not is_pt_free(graph, 4):
                continue
            sides = spanning_complete_bipartite(graph)
            assert sides is not None
            a, b = sides
            assert all(graph.has_edge(x, y) for x in a for y in b)
            assert min_dominating_set(graph, limit=2) is not None
            bound = dominating_size_bound_holds(graph, 2, graph.max_degree)
            assert bound.precondition_met and bound.holds
            checked += 1
        assert checked > 0

    @pytest.mark.parametrize("seed", range(30))
    def test_random_cographs_on_eight_to_ten_vertices(self, seed):
        graph = _cograph(8 + seed % 3, random.Random(seed), join=True)
        assert is_connected(graph) and is_pt_free(graph, 4)
        a, b = spanning_complete_bipartite(graph)
        assert all(graph.has_edge(x, y) for x in a for y in b)
        assert min_dominating_set(graph, limit=2) is not None
        bound = dominating_size_bound_holds(graph, 2, graph.max_degree)
        assert bound.precondition_met and bound.holds

    def test_no_spanning_complete_bipartite_in_p4(self):
        assert spanning_complete_bipartite(path_graph(4)) is None
        assert spanning_complete_bipartite(path_graph(1)) is None


class TestDominatingSizeBound:
    """Test cases for the dominating-set size bound"""

    @pytest.mark.parametrize("graph, p, k", [
        (star_graph(3), 1, 3), (path_graph(4), 2, 2), (cycle_graph(6), 2, 2),
    ])
    def test_holds_when_precondition_met(self, graph, p, k):
        check = dominating_size_bound_holds(graph, p, k)
        assert check.precondition_met
        assert check

    def test_no_small_dominating_set(self):
        check = dominating_size_bound_holds(cycle_graph(7), 2, 2)
        assert check.holds and not check.precondition_met
        assert "precondition unmet" in check.note

    def test_degree_too_large(self):
        check = dominating_size_bound_holds(star_graph(4), 1, 3)
        assert not check.precondition_met
        assert "maximum degree" in check.note


class TestDecidePtFree:
    """Test cases for the P_t-free decision"""

    def test_two_claws(self, claw):
        graph = disjoint_union(claw, claw)
        decision = decide_pt_free(graph, 3, 5)
        assert decision.verdict is PtVerdict.YES
        assert validate_colouring(graph, decision.colouring)
        assert len(decision.components) == 2

    def test_k5_with_four_colours(self, k5):
        decision = decide_pt_free(k5, 4, 4)
        assert decision.verdict is PtVerdict.NO
        assert "overfull vertex set of size 5" in decision.reason

    def test_class_two_component_needs_search(self, petersen):
        decision = decide_pt_free(petersen, 3, 10)
        assert decision.verdict is PtVerdict.NO
        assert "exhaustive search" in decision.reason

    def test_degree_exceeds_k(self, k5):
        decision = decide_pt_free(k5, 3, 4)
        assert decision.verdict is PtVerdict.NO
        assert "degree exceeds k" in decision.reason

    def test_not_pt_free(self):
        decision = decide_pt_free(path_graph(6), 3, 6)
        assert decision.verdict is PtVerdict.INPUT_NOT_PT_FREE
        assert decision.witness == (0, 1, 2, 3, 4, 5)

    def test_low_degree_uses_fan_colouring(self, c5):
        decision = decide_pt_free(c5, 3, 5)
        assert decision.verdict is PtVerdict.YES
        assert "fan colouring" in decision.components[0].reason
        assert validate_colouring(c5, decision.colouring)

    def test_fan_colouring_is_offered_under_k_colours(self):
        graph = path_graph(3)
        decision = decide_pt_free(graph, 4, 5)
        assert decision.colouring.k == 4
        assert validate_colouring(graph, decision.colouring)

    def test_edgeless_graph(self):
        decision = decide_pt_free(empty_graph(3), 3, 2)
        assert decision.verdict is PtVerdict.YES
        assert decision.colouring.assignment == {}

    def test_mixed_components(self, k5, claw):
        graph = disjoint_union(claw, k5)
        decision = decide_pt_free(graph, 3, 4)
        assert decision.verdict is PtVerdict.NO
        assert "(4, 5, 6, 7, 8)" in decision.reason

    def test_threads(self, claw):
        graph = disjoint_union(claw, claw, complete_graph(4))
        single = decide_pt_free(graph, 3, 4, threads=1)
        split = decide_pt_free(graph, 3, 4, threads=3)
        assert split.verdict is PtVerdict.YES
        assert split.colouring == single.colouring

    @pytest.mark.parametrize("k, t", [(2, 4), (3, 0)])
    def test_preconditions(self, k, t, k4):
        with pytest.raises(InputError):
            decide_pt_free(k4, k, t)


class TestCambySchaudtCheck:
    """Test cases for the connected dominating set property"""

    @pytest.mark.parametrize("graph, t", [
        (star_graph(4), 4), (path_graph(5), 7), (path_graph(5), 6), (cycle_graph(6), 6),
        (complete_graph(5), 4),
    ])
    def test_holds(self, graph, t):
        result = camby_schaudt_check(graph, t)
        assert result.status is CheckStatus.HOLDS
        assert result.label == "exhaustive"

    @pytest.mark.parametrize("graph, t", [
        (path_graph(4), 3), (disjoint_union(path_graph(2), path_graph(2)), 5), (path_graph(6), 6),
    ])
    def test_precondition_unmet(self, graph, t):
        result = camby_schaudt_check(graph, t)
        assert result.status is CheckStatus.PRECONDITION_UNMET
        assert not result

    def test_hundred_random_p6_free_graphs(self):
        checked = 0
        for seed in range(5000):
            if checked == 100:
                break
            g = nx.gnp_random_graph(6 + seed % 7, (0.35, 0.5, 0.65)[seed % 3], seed=seed)
            graph = from_networkx(g)
            if not is_connected(graph) or not is_pt_free(graph, 6):
                continue
            result = camby_schaudt_check(graph, 6)
            assert result.status is CheckStatus.HOLDS, graph.edge_list
            assert result.label == "exhaustive"
            checked += 1
        assert checked == 100

    def test_sampled_above_limit(self, mocker, caplog):
        mocker.patch.object(config.tractable, "exhaustive_cds_limit", 3)
        with caplog.at_level(logging.WARNING):
            result = camby_schaudt_check(path_graph(5), 7)
        assert result
        assert result.label == "sampled"
        assert "sampled" in caplog.text
