"""
Graph generators: named small graphs and seeded random k-regular graphs
"""

import logging
import random
from collections import defaultdict
from itertools import combinations
from typing import Iterator, Optional, Set, Tuple

import networkx as nx

from ..config import config
from .errors import GraphError
from .graph import Graph, build_graph, complement, from_networkx

logger = logging.getLogger(__name__)


def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0"""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b} with sides 0..a-1 and a..a+b-1"""
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def _pair_stubs(n: int, k: int, rng: random.Random) -> Optional[Set[Tuple[int, int]]]:
    """
    One pairing-model attempt. Loops and repeated pairs are rejected and their
    stubs re-paired; returns None when the leftover stubs cannot be paired.
    """
    edges: Set[Tuple[int, int]] = set()
    stubs = list(range(n)) * k

    while stubs:
        leftover = defaultdict(int)
        rng.shuffle(stubs)
        it = iter(stubs)
        for s1, s2 in zip(it, it):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                leftover[s1] += 1
                leftover[s2] += 1

        if leftover and not any(
            a != b and (min(a, b), max(a, b)) not in edges
            for a, b in combinations(sorted(leftover), 2)
        ):
            return None

        stubs = [v for v in sorted(leftover) for _ in range(leftover[v])]
    return edges


def gen_k_regular(n: int, k: int, seed: Optional[int] = None,
                  retry_cap: Optional[int] = None) -> Graph:
    """
    Seeded simple k-regular graph on n vertices.

    Dense requests (k > (n-1)/2) sample the sparser complement instead, which
    keeps the rejection rate low; the result is deterministic per seed.
    """
    if n <= 0 or k < 0 or k >= n or (n * k) % 2:
        raise GraphError(f"infeasible degree sequence: n={n}, k={k}")
    seed = config.generator.default_seed if seed is None else seed
    retry_cap = retry_cap or config.generator.retry_cap

    if k > (n - 1) / 2:
        return complement(gen_k_regular(n, n - 1 - k, seed, retry_cap))

    rng = random.Random(seed)
    for attempt in range(1, retry_cap + 1):
        edges = _pair_stubs(n, k, rng)
        if edges is not None:
            logger.debug(f"{k}-regular graph on {n} vertices after {attempt} attempt(s)")
            return build_graph(n, sorted(edges))
    raise GraphError(f"generation failed after {retry_cap} attempts (n={n}, k={k})")


def small_graph_corpus(max_vertices: int = 7, connected: bool = False) -> Iterator[Graph]:
    """Every graph on 1..max_vertices vertices up to isomorphism (at most 7)"""
    if not 1 <= max_vertices <= 7:
        raise GraphError(f"the graph atlas covers 1..7 vertices, got {max_vertices}")
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == 0 or g.number_of_nodes() > max_vertices:
            continue
        if connected and not nx.is_connected(g):
            continue
        yield from_networkx(g)
