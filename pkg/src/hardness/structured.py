"""
Structured k-edge-colourings of K_k (k even).

Vertex 2i and 2i+1 form pair i. Every vertex of K_k has degree k-1, so under
k colours it misses exactly one; here both vertices of pair i miss the same
colour and nobody else misses it. Colours 1..k/2 are the perfect matchings,
colours k/2+1..k the near-perfect matchings that avoid one pair each.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Set, Tuple

from ..colouring.colouring import (
    EdgeColouring, SearchOutcome, constrained_search, missed_colours, validate_colouring,
)
from ..core.errors import GraphError, InvariantViolation
from ..core.generators import complete_graph
from ..core.graph import Edge

logger = logging.getLogger(__name__)

Matching = List[Tuple[int, int]]


@dataclass(frozen=True)
class StructuredKkColouring:
    k: int
    colouring: EdgeColouring
    pairs: Tuple[Tuple[int, int], ...]
    pair_missed: Dict[int, int]


def check_structured(structured: StructuredKkColouring) -> List[str]:
    """Every way the object fails its invariants; empty when it conforms"""
    k = structured.k
    graph = complete_graph(k)
    problems = []
    if not validate_colouring(graph, structured.colouring):
        return ["colouring is not proper"]

    flat = sorted(v for pair in structured.pairs for v in pair)
    if flat != list(range(k)) or len(structured.pairs) != k // 2:
        problems.append("pairs do not partition the vertices")
        return problems

    missed = {v: missed_colours(graph, structured.colouring, v) for v in graph.vertices}
    for i, (a, b) in enumerate(structured.pairs):
        colour = structured.pair_missed.get(i)
        if missed[a] != {colour} or missed[b] != {colour}:
            problems.append(f"pair {i} does not miss exactly colour {colour}")
    if len(set(structured.pair_missed.values())) != len(structured.pairs):
        problems.append("missed colours are not distinct across pairs")
    return problems


def _near_one_factorization(m: int) -> List[Matching]:
    """For odd m: matching j of K_m avoids node j and pairs a, b with a+b = 2j (mod m)"""
    return [
        [(a, b) for a, b in combinations(range(m), 2) if (a + b) % m == (2 * j) % m]
        for j in range(m)
    ]


def _parallel(matching: Matching) -> Matching:
    return [(2 * a, 2 * b) for a, b in matching] + [(2 * a + 1, 2 * b + 1) for a, b in matching]


def _crossing(matching: Matching) -> Matching:
    return [(2 * a, 2 * b + 1) for a, b in matching] + [(2 * a + 1, 2 * b) for a, b in matching]


def _classes_odd_quotient(m: int) -> Tuple[List[Matching], List[Matching]]:
    """
    m odd: lift a near-1-factorization of K_m on the pair-nodes. The parallel
    lift of matching i avoids pair i; the crossing lift plus the edge inside
    pair i is perfect.
    """
    perfect, avoiding = [], []
    for i, matching in enumerate(_near_one_factorization(m)):
        avoiding.append(_parallel(matching))
        perfect.append(_crossing(matching) + [(2 * i, 2 * i + 1)])
    return perfect, avoiding


def _classes_even_quotient(m: int) -> Tuple[List[Matching], List[Matching]]:
    """
    m = 2r with r odd: group the pair-nodes into r blocks {2j, 2j+1}. Pair i
    is matched with its block partner s, and the matchings avoiding a block
    come from the odd quotient on blocks, one parallel and one crossing lift.
    """
    r = m // 2
    block_matchings = _near_one_factorization(r)
    quotient: List[Matching] = []
    for i in range(m):
        j = i // 2
        lift = _parallel if i % 2 == 0 else _crossing
        quotient.append(lift(block_matchings[j]))

    perfect, avoiding = [], []
    for i in range(m):
        s = i ^ 1
        avoiding.append([(2 * s, 2 * s + 1)] + _parallel(quotient[i]))
        own = _parallel([(i, s)]) if i < s else _crossing([(s, i)])
        perfect.append(_crossing(quotient[i]) + own)
    return perfect, avoiding


def _from_classes(k: int, perfect: List[Matching], avoiding: List[Matching]) -> StructuredKkColouring:
    half = k // 2
    assignment = {}
    for i, matching in enumerate(perfect):
        for a, b in matching:
            assignment[Edge.of(a, b)] = i + 1
    for i, matching in enumerate(avoiding):
        for a, b in matching:
            assignment[Edge.of(a, b)] = half + i + 1
    pairs = tuple((2 * i, 2 * i + 1) for i in range(half))
    return StructuredKkColouring(k, EdgeColouring(k, assignment), pairs,
                                 {i: half + i + 1 for i in range(half)})


def _search_structured(k: int, budget: Optional[int]) -> Optional[StructuredKkColouring]:
    """Certified search: pair i may not use its avoided colour half+i+1"""
    half = k // 2
    forbidden = {v: 1 << (half + v // 2 + 1) for v in range(k)}
    result = constrained_search(complete_graph(k), k, forbidden,
                                symmetric=range(1, half + 1), budget=budget)
    logger.debug(f"structured search for k={k}: {result.outcome.value} after {result.nodes} nodes")
    if result.outcome is not SearchOutcome.YES:
        return None
    pairs = tuple((2 * i, 2 * i + 1) for i in range(half))
    return StructuredKkColouring(k, result.colouring, pairs,
                                 {i: half + i + 1 for i in range(half)})


@lru_cache(maxsize=None)
def kneven_colouring(k: int, budget: Optional[int] = None) -> StructuredKkColouring:
    """
    Structured k-edge-colouring of K_k for even k >= 2, checked against its
    invariants before it is returned.
    """
    if k < 2 or k % 2:
        raise GraphError(f"k must be even, got {k}")
    half = k // 2
    if half % 2 == 1:
        structured = _from_classes(k, *_classes_odd_quotient(half))
    elif half % 4 == 2:
        structured = _from_classes(k, *_classes_even_quotient(half))
    else:
        structured = _search_structured(k, budget)
        if structured is None:
            raise InvariantViolation(f"construction failed for k={k}")

    problems = check_structured(structured)
    if problems:
        raise InvariantViolation(f"construction failed for k={k}: {'; '.join(problems)}")
    return structured


def colour_classes(structured: StructuredKkColouring) -> Dict[int, Set[Edge]]:
    classes: Dict[int, Set[Edge]] = {c: set() for c in range(1, structured.k + 1)}
    for edge, colour in structured.colouring.items():
        classes[colour].add(edge)
    return classes
