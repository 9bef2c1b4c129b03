"""
The polynomial side of the dichotomy: the f(k, t) size bound, exact
(connected) dominating sets, and the constant-time decision on P_t-free graphs.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from ..colouring.colouring import (
    EdgeColouring, SearchOutcome, exact_k_edge_colourable, vizing_colouring,
)
from ..config import config
from ..core.errors import BudgetExceeded, GraphError, InputError, InvariantViolation
from ..core.graph import (
    Edge, Graph, complement, connected_components, induced_subgraph, is_connected,
)
from ..recognition.recognition import find_induced_path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SizeBound:
    k: int
    t: int
    value: int


@lru_cache(maxsize=None)
def _f(k: int, t: int) -> int:
    if t <= 4:
        return 2 * (k + 1)
    return max(_f(k, t - 2) * (k + 1), (t - 2) * (k + 1))


def size_bound(k: int, t: int) -> SizeBound:
    """Most vertices a connected P_t-free graph of maximum degree k can have"""
    if k < 3 or t < 1:
        raise InputError(f"size bound needs k >= 3 and t >= 1, got k={k}, t={t}")
    return SizeBound(k, t, _f(k, t))


def is_dominating(graph: Graph, vertices) -> bool:
    chosen = set(vertices)
    return all(v in chosen or graph.adjacency[v] & chosen for v in graph.vertices)


def min_dominating_set(graph: Graph, limit: Optional[int] = None) -> Optional[FrozenSet[int]]:
    """A smallest dominating set, or None when none of size <= limit exists"""
    top = graph.n if limit is None else min(limit, graph.n)
    for size in range(0 if graph.n == 0 else 1, top + 1):
        for chosen in combinations(graph.vertices, size):
            if is_dominating(graph, chosen):
                return frozenset(chosen)
    return None


def _require_connected(graph: Graph):
    if graph.n == 0 or not is_connected(graph):
        raise GraphError("graph not connected")
    if graph.n > config.tractable.mcds_max_vertices:
        raise InputError(
            f"exhaustive dominating-set search is limited to {config.tractable.mcds_max_vertices} vertices"
        )


def _connected_dominating_of_size(graph: Graph, size: int) -> Iterator[FrozenSet[int]]:
    for chosen in combinations(graph.vertices, size):
        if is_connected(graph, chosen) and is_dominating(graph, chosen):
            yield frozenset(chosen)


def min_connected_dominating_set(graph: Graph) -> FrozenSet[int]:
    """Smallest connected dominating set, by increasing subset size"""
    _require_connected(graph)
    for size in range(1, graph.n + 1):
        for found in _connected_dominating_of_size(graph, size):
            return found
    raise InvariantViolation("a connected graph always has a connected dominating set")


def minimum_connected_dominating_sets(graph: Graph) -> List[FrozenSet[int]]:
    """Every minimum connected dominating set, in lexicographic order"""
    _require_connected(graph)
    for size in range(1, graph.n + 1):
        found = list(_connected_dominating_of_size(graph, size))
        if found:
            return found
    raise InvariantViolation("a connected graph always has a connected dominating set")


def spanning_complete_bipartite(graph: Graph) -> Optional[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """
    Sides (A, B) of a spanning complete bipartite subgraph, found as a
    component of the complement. A connected P_4-free graph on two or more
    vertices always has a disconnected complement; None otherwise.
    """
    if graph.n < 2:
        return None
    parts = connected_components(complement(graph))
    if len(parts) < 2:
        return None
    side = parts[0]
    return side, frozenset(graph.vertices) - side


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    precondition_met: bool
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds


def dominating_size_bound_holds(graph: Graph, p: int, k: int) -> BoundCheck:
    """Max degree <= k plus a dominating set of size <= p forces |V| <= p(k+1)"""
    if graph.max_degree > k:
        return BoundCheck(True, False, f"precondition unmet: maximum degree exceeds {k}")
    if min_dominating_set(graph, limit=p) is None:
        return BoundCheck(True, False, f"precondition unmet: no dominating set of size <= {p}")
    return BoundCheck(graph.n <= p * (k + 1), True)


# --- constant-time decision on P_t-free graphs --------------------------------

class PtVerdict(Enum):
    YES = "Yes"
    NO = "No"
    INPUT_NOT_PT_FREE = "InputNotPtFree"


@dataclass(frozen=True)
class ComponentDecision:
    vertices: Tuple[int, ...]
    max_degree: int
    verdict: PtVerdict
    reason: str
    nodes: int = 0


@dataclass(frozen=True)
class PtFreeDecision:
    verdict: PtVerdict
    k: int
    t: int
    colouring: Optional[EdgeColouring] = None
    reason: str = ""
    witness: Optional[Tuple[int, ...]] = None
    components: Tuple[ComponentDecision, ...] = field(default_factory=tuple)


def _decide_component(graph: Graph, members: FrozenSet[int], k: int, t: int,
                      budget: Optional[int]) -> Tuple[ComponentDecision, Dict[Edge, int]]:
    sub, relabel = induced_subgraph(graph, members)
    back = {new: old for old, new in relabel.items()}
    delta = sub.max_degree
    ordered = tuple(sorted(members))

    def lift(colouring: EdgeColouring) -> Dict[Edge, int]:
        return {Edge.of(back[a], back[b]): c for (a, b), c in colouring.items()}

    if sub.m == 0:
        return ComponentDecision(ordered, 0, PtVerdict.YES, "no edges"), {}
    if delta <= k - 1:
        colouring = vizing_colouring(sub).with_palette(k)
        return ComponentDecision(ordered, delta, PtVerdict.YES,
                                 f"maximum degree {delta} <= k-1, fan colouring"), lift(colouring)
    if delta >= k + 1:
        return ComponentDecision(ordered, delta, PtVerdict.NO, f"degree exceeds k ({delta} > {k})"), {}

    bound = size_bound(k, t).value
    if sub.n > bound:
        raise InvariantViolation(f"size bound violated: component on {sub.n} vertices exceeds f({k},{t})={bound}")
    result = exact_k_edge_colourable(sub, k, budget=budget, threads=1)
    if result.outcome is SearchOutcome.BUDGET_EXCEEDED:
        raise BudgetExceeded(f"component {ordered} undecided after {result.nodes} nodes")
    if result.outcome is SearchOutcome.NO:
        reason = "exhaustive search found no k-edge-colouring"
        if result.overfull is not None:
            reason = f"overfull vertex set of size {len(result.overfull)}"
        return ComponentDecision(ordered, delta, PtVerdict.NO, reason, result.nodes), {}
    return ComponentDecision(ordered, delta, PtVerdict.YES,
                             "exact search", result.nodes), lift(result.colouring)


def decide_pt_free(graph: Graph, k: int, t: int, budget: Optional[int] = None,
                   threads: Optional[int] = None) -> PtFreeDecision:
    """
    Decide k-edge-colourability of a P_t-free graph component by component.
    Components with maximum degree exactly k have at most f(k, t) vertices,
    so the exact search there runs on bounded-size input.
    """
    if k < 3 or t < 1:
        raise InputError(f"decision needs k >= 3 and t >= 1, got k={k}, t={t}")
    path = find_induced_path(graph, t)
    if path is not None:
        return PtFreeDecision(PtVerdict.INPUT_NOT_PT_FREE, k, t,
                              reason=f"input contains an induced P_{t}", witness=path)

    components = connected_components(graph)
    threads = threads or config.solver.threads
    if threads > 1 and len(components) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            outcomes = list(executor.map(
                lambda members: _decide_component(graph, members, k, t, budget), components
            ))
    else:
        outcomes = [_decide_component(graph, members, k, t, budget) for members in components]

    decisions = tuple(decision for decision, _ in outcomes)
    refused = [d for d in decisions if d.verdict is PtVerdict.NO]
    if refused:
        first = refused[0]
        return PtFreeDecision(PtVerdict.NO, k, t, reason=f"component {first.vertices}: {first.reason}",
                              components=decisions)

    merged: Dict[Edge, int] = {}
    for _, assignment in outcomes:
        merged.update(assignment)
    return PtFreeDecision(PtVerdict.YES, k, t, colouring=EdgeColouring(k, merged),
                          reason="every component is k-edge-colourable", components=decisions)


# --- connected dominating sets of P_t-free graphs ----------------------------

class CheckStatus(Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    PRECONDITION_UNMET = "precondition unmet"


@dataclass(frozen=True)
class CambySchaudtResult:
    status: CheckStatus
    exhaustive: bool = False
    sets_checked: int = 0
    counterexample: Optional[FrozenSet[int]] = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.status is CheckStatus.HOLDS

    @property
    def label(self) -> str:
        return "exhaustive" if self.exhaustive else "sampled"


def _is_path(graph: Graph) -> bool:
    return (graph.n >= 1 and graph.m == graph.n - 1 and graph.max_degree <= 2
            and is_connected(graph))


def camby_schaudt_check(graph: Graph, t: int) -> CambySchaudtResult:
    """
    Every minimum connected dominating set X of a connected P_t-free graph
    induces a P_{t-2}-free graph or exactly P_{t-2}. All minimum sets are
    checked up to the configured vertex limit, a single one above it.
    """
    if t < 4:
        return CambySchaudtResult(CheckStatus.PRECONDITION_UNMET, note=f"t must be at least 4, got {t}")
    if graph.n == 0 or not is_connected(graph):
        return CambySchaudtResult(CheckStatus.PRECONDITION_UNMET, note="graph not connected")
    if find_induced_path(graph, t) is not None:
        return CambySchaudtResult(CheckStatus.PRECONDITION_UNMET, note=f"graph is not P_{t}-free")

    exhaustive = graph.n <= config.tractable.exhaustive_cds_limit
    if exhaustive:
        candidates = minimum_connected_dominating_sets(graph)
    else:
        candidates = [min_connected_dominating_set(graph)]
        logger.warning(f"checking a single minimum connected dominating set of {graph} (sampled)")

    for chosen in candidates:
        sub, _ = induced_subgraph(graph, chosen)
        path_free = find_induced_path(sub, t - 2) is None
        if not (path_free or (sub.n == t - 2 and _is_path(sub))):
            return CambySchaudtResult(CheckStatus.VIOLATED, exhaustive, len(candidates), chosen)
    return CambySchaudtResult(CheckStatus.HOLDS, exhaustive, len(candidates))
