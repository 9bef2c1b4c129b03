"""
Edge colouring core: validation, the exact k-edge-colourability search,
a constructive (Delta+1)-colouring and the chromatic index.

Colours are 1-based, matching {1, ..., k}.
"""

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Deque, Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from ..config import config
from ..core.errors import BudgetExceeded, ColouringError, InvariantViolation
from ..core.graph import Edge, Graph, connected_components

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeColouring:
    """Assignment of colours in 1..k to edges; properness is checked separately"""
    k: int
    assignment: Mapping[Edge, int]

    def colour_of(self, a: int, b: int) -> int:
        return self.assignment[Edge.of(a, b)]

    def with_palette(self, k: int) -> "EdgeColouring":
        """Same assignment offered under a palette of k colours"""
        if self.assignment and max(self.assignment.values()) > k:
            raise ColouringError(f"colour out of range: palette {k} is too small")
        return EdgeColouring(k, dict(self.assignment))

    def items(self) -> List[Tuple[Edge, int]]:
        return sorted(self.assignment.items())


@dataclass(frozen=True)
class Conflict:
    vertex: int
    first: Edge
    second: Edge
    colour: int


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    conflict: Optional[Conflict] = None

    def __bool__(self) -> bool:
        return self.valid


def validate_colouring(graph: Graph, colouring: EdgeColouring) -> ValidationResult:
    """Check a colouring covers G exactly, stays in 1..k and is proper"""
    for edge in graph.edge_list:
        if edge not in colouring.assignment:
            raise ColouringError(f"incomplete colouring: edge ({edge.u}, {edge.v}) has no colour")
    for edge, colour in colouring.items():
        if edge not in graph.edges:
            raise ColouringError(f"incomplete colouring: ({edge.u}, {edge.v}) is not an edge of the graph")
        if not 1 <= colour <= colouring.k:
            raise ColouringError(f"colour out of range: {colour} on ({edge.u}, {edge.v}) with k={colouring.k}")

    for v in graph.vertices:
        seen: Dict[int, Edge] = {}
        for edge in graph.incident_edges(v):
            colour = colouring.assignment[edge]
            if colour in seen:
                return ValidationResult(False, Conflict(v, seen[colour], edge, colour))
            seen[colour] = edge
    return ValidationResult(True)


def missed_colours(graph: Graph, colouring: EdgeColouring, v: int) -> FrozenSet[int]:
    """Colours of 1..k that appear on no edge at v"""
    if not validate_colouring(graph, colouring):
        raise ColouringError("invalid colouring")
    present = {colouring.assignment[e] for e in graph.incident_edges(v)}
    return frozenset(range(1, colouring.k + 1)) - present


# --- exact search -----------------------------------------------------------

class SearchOutcome(Enum):
    YES = "yes"
    NO = "no"
    BUDGET_EXCEEDED = "budget exceeded"


@dataclass(frozen=True)
class ExactResult:
    outcome: SearchOutcome
    colouring: Optional[EdgeColouring]
    nodes: int
    overfull: Optional[FrozenSet[int]] = None

    @property
    def decided(self) -> bool:
        return self.outcome is not SearchOutcome.BUDGET_EXCEEDED


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _colours_in(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _edges_within(graph: Graph, vertices: FrozenSet[int]) -> int:
    return sum(len(graph.adjacency[v] & vertices) for v in vertices) // 2


def overfull_subgraph(graph: Graph, k: int) -> Optional[FrozenSet[int]]:
    """
    An odd vertex set S spanning more than k(|S|-1)/2 edges, or None.

    Each colour class meets S in at most (|S|-1)/2 edges, so such a set rules
    out every k-edge-colouring. Components are always checked; every odd
    subset larger than k only up to the configured vertex limit.
    """
    for component in connected_components(graph):
        size = len(component)
        if size % 2 and _edges_within(graph, component) > k * (size - 1) // 2:
            return component
    if graph.n > config.solver.overfull_subset_limit:
        return None

    masks = [sum(1 << w for w in graph.adjacency[v]) for v in graph.vertices]
    start = k + 1 if k % 2 == 0 else k + 2
    for size in range(start, graph.n + 1, 2):
        threshold = k * (size - 1) // 2
        for subset in combinations(graph.vertices, size):
            inside = 0
            mask = sum(1 << v for v in subset)
            for v in subset:
                inside += _popcount(masks[v] & mask)
            if inside // 2 > threshold:
                return frozenset(subset)
    return None


class _BudgetExhausted(Exception):
    pass


class _NodeBudget:
    """Decision-node counter for one search"""

    def __init__(self, limit: int):
        self.limit = limit
        self.spent = 0

    def spend(self):
        self.spent += 1
        if self.spent > self.limit:
            raise _BudgetExhausted()


class _EdgeSearch:
    """
    Backtracking over edges, fewest free colours first.

    Colour sets are bitmasks (bit c for colour c). forbidden pre-blocks colours
    per vertex; colours listed in symmetric are interchangeable, so only the
    first still-unused one is ever tried.

    Every choice is followed by propagation that costs no budget: an edge with
    a single free colour takes it, and a saturated vertex (degree equal to the
    number of colours it may see) gives each colour it still lacks to the only
    uncoloured edge that can carry it.
    """

    def __init__(self, graph: Graph, k: int, budget: _NodeBudget,
                 forbidden: Optional[Mapping[int, int]] = None,
                 symmetric: Optional[Sequence[int]] = None):
        self.graph = graph
        self.k = k
        self.budget = budget
        self.edges = graph.edge_list
        self.full = ((1 << (k + 1)) - 1) & ~1
        self.blocked = [0] * graph.n
        for v, mask in (forbidden or {}).items():
            self.blocked[v] |= mask & self.full
        self.saturated = [graph.degree(v) == _popcount(self.full & ~self.blocked[v]) for v in graph.vertices]
        index = {e: i for i, e in enumerate(self.edges)}
        self.incident = [[index[e] for e in graph.incident_edges(v)] for v in graph.vertices]
        self.coloured_at = [0] * graph.n
        self.colour = [0] * len(self.edges)
        self.use_count = [0] * (k + 1)
        self.symmetric = tuple(range(1, k + 1)) if symmetric is None else tuple(symmetric)
        self._symmetric_set = frozenset(self.symmetric)
        self.degree_sum = [graph.degree(u) + graph.degree(v) for u, v in self.edges]

    def copy(self) -> "_EdgeSearch":
        other = object.__new__(_EdgeSearch)
        other.__dict__.update(self.__dict__)
        other.blocked = list(self.blocked)
        other.coloured_at = list(self.coloured_at)
        other.colour = list(self.colour)
        other.use_count = list(self.use_count)
        return other

    def free(self, i: int) -> int:
        u, v = self.edges[i]
        return self.full & ~(self.blocked[u] | self.blocked[v])

    def assign(self, i: int, c: int):
        u, v = self.edges[i]
        bit = 1 << c
        self.colour[i] = c
        self.blocked[u] |= bit
        self.blocked[v] |= bit
        self.coloured_at[u] += 1
        self.coloured_at[v] += 1
        self.use_count[c] += 1

    def unassign(self, i: int, c: int):
        u, v = self.edges[i]
        bit = ~(1 << c)
        self.colour[i] = 0
        self.blocked[u] &= bit
        self.blocked[v] &= bit
        self.coloured_at[u] -= 1
        self.coloured_at[v] -= 1
        self.use_count[c] -= 1

    def undo(self, trail: List[int]):
        for i in reversed(trail):
            self.unassign(i, self.colour[i])
        trail.clear()

    def _force(self, i: int, c: int, trail: List[int], queue: Deque[int], queued: Set[int]):
        self.assign(i, c)
        trail.append(i)
        for x in self.edges[i]:
            if x not in queued:
                queue.append(x)
                queued.add(x)
            for w in sorted(self.graph.adjacency[x]):
                if self.saturated[w] and w not in queued:
                    queue.append(w)
                    queued.add(w)

    def _propagate(self, queue: Deque[int], queued: Set[int], trail: List[int]) -> bool:
        """Run the forcing rules to a fixpoint; False on a contradiction"""
        while queue:
            x = queue.popleft()
            queued.discard(x)
            for i in self.incident[x]:
                if self.colour[i]:
                    continue
                free = self.free(i)
                if not free:
                    return False
                if not free & (free - 1):
                    self._force(i, free.bit_length() - 1, trail, queue, queued)
            if not self.saturated[x]:
                continue
            for c in _colours_in(self.full & ~self.blocked[x]):
                if self.blocked[x] >> c & 1:
                    continue
                carriers = [i for i in self.incident[x] if not self.colour[i] and self.free(i) >> c & 1]
                if not carriers:
                    return False
                if len(carriers) == 1:
                    self._force(carriers[0], c, trail, queue, queued)
        return True

    def settle(self) -> bool:
        """Propagate from every vertex; the forced colours become part of the root"""
        queue = deque(self.graph.vertices)
        return self._propagate(queue, set(queue), [])

    def choose(self, i: int, c: int, trail: List[int]) -> bool:
        queue: Deque[int] = deque()
        queued: Set[int] = set()
        self._force(i, c, trail, queue, queued)
        return self._propagate(queue, queued, trail)

    def select(self) -> Optional[int]:
        """Next edge to branch on; -1 on a dead end, None when all are coloured"""
        best, best_key = None, None
        for i, (u, v) in enumerate(self.edges):
            if self.colour[i]:
                continue
            free = self.free(i)
            if not free:
                return -1
            key = (-_popcount(free), self.coloured_at[u] + self.coloured_at[v], self.degree_sum[i], -i)
            if best_key is None or key > best_key:
                best, best_key = i, key
        return best

    def candidates(self, i: int) -> List[int]:
        free = self.free(i)
        fresh_tried = False
        result = []
        for c in range(1, self.k + 1):
            if not free >> c & 1:
                continue
            if c in self._symmetric_set and self.use_count[c] == 0:
                if fresh_tried:
                    continue
                fresh_tried = True
            result.append(c)
        return result

    def solve(self) -> bool:
        i = self.select()
        if i is None:
            return True
        if i < 0:
            return False
        for c in self.candidates(i):
            self.budget.spend()
            trail: List[int] = []
            if self.choose(i, c, trail) and self.solve():
                return True
            self.undo(trail)
        return False

    def result(self) -> EdgeColouring:
        return EdgeColouring(self.k, {e: c for e, c in zip(self.edges, self.colour)})


def _break_symmetry(graph: Graph, search: _EdgeSearch):
    """Pin the edges at the first max-degree vertex to colours 1, 2, ..."""
    anchor = min(graph.vertices, key=lambda v: (-graph.degree(v), v))
    index = {e: i for i, e in enumerate(search.edges)}
    for c, edge in enumerate(graph.incident_edges(anchor), start=1):
        search.assign(index[edge], c)


def _run_branches(search: _EdgeSearch, threads: int) -> bool:
    """
    Split the first decision across worker threads.

    Each branch counts its own nodes. Outcomes are replayed in branch order
    against the shared limit, so the answer, the colouring and the node count
    are those of a single-threaded run.
    """
    i = search.select()
    if i is None:
        return True
    if i < 0:
        return False
    budget = search.budget
    remaining = budget.limit - budget.spent

    def run(c: int) -> Tuple[Optional[bool], _EdgeSearch]:
        branch = search.copy()
        branch.budget = _NodeBudget(remaining)
        try:
            branch.budget.spend()
            return branch.choose(i, c, []) and branch.solve(), branch
        except _BudgetExhausted:
            return None, branch

    candidates = search.candidates(i)
    with ThreadPoolExecutor(max_workers=min(threads, len(candidates))) as executor:
        outcomes = list(executor.map(run, candidates))

    for found, branch in outcomes:
        if found is not None:
            budget.spent += branch.budget.spent
        if found is None or budget.spent > budget.limit:
            budget.spent = budget.limit + 1
            raise _BudgetExhausted()
        if found:
            search.colour = branch.colour
            return True
    return False


def _search(graph: Graph, k: int, budget: Optional[int], threads: Optional[int],
            forbidden: Optional[Mapping[int, int]] = None,
            symmetric: Optional[Sequence[int]] = None,
            pin_anchor: bool = True) -> ExactResult:
    limit = budget if budget is not None else config.solver.node_budget
    threads = threads or config.solver.threads
    counter = _NodeBudget(limit)
    search = _EdgeSearch(graph, k, counter, forbidden, symmetric)
    if pin_anchor:
        _break_symmetry(graph, search)
    if not search.settle():
        logger.debug(f"exact search for k={k} on {graph}: refuted by propagation")
        return ExactResult(SearchOutcome.NO, None, 0)
    try:
        found = _run_branches(search, threads) if threads > 1 else search.solve()
    except _BudgetExhausted:
        logger.warning(f"exact search for k={k} on {graph} exhausted {limit} nodes")
        return ExactResult(SearchOutcome.BUDGET_EXCEEDED, None, counter.spent)
    logger.debug(f"exact search for k={k} on {graph}: {'yes' if found else 'no'} after {counter.spent} nodes")
    if not found:
        return ExactResult(SearchOutcome.NO, None, counter.spent)
    return ExactResult(SearchOutcome.YES, search.result(), counter.spent)


def exact_k_edge_colourable(graph: Graph, k: int, budget: Optional[int] = None,
                            threads: Optional[int] = None) -> ExactResult:
    """
    Decide k-edge-colourability exactly.

    A NO outcome means either an overfull vertex set was found or the search
    space was exhausted; running out of budget is reported as BUDGET_EXCEEDED
    and never as NO.
    """
    if k < 1:
        raise ColouringError(f"colour out of range: k must be at least 1, got {k}")
    if graph.max_degree > k:
        return ExactResult(SearchOutcome.NO, None, 0)
    if graph.m == 0:
        return ExactResult(SearchOutcome.YES, EdgeColouring(k, {}), 0)
    dense = overfull_subgraph(graph, k)
    if dense is not None:
        logger.debug(f"{graph} has an overfull set of {len(dense)} vertices for k={k}")
        return ExactResult(SearchOutcome.NO, None, 0, overfull=dense)
    result = _search(graph, k, budget, threads)
    if result.colouring is not None and not validate_colouring(graph, result.colouring):
        raise InvariantViolation("exact search returned an improper colouring")
    return result


def constrained_search(graph: Graph, k: int, forbidden: Mapping[int, int],
                       symmetric: Sequence[int], budget: Optional[int] = None) -> ExactResult:
    """
    Exact search where vertex v may not see the colours in forbidden[v] (a bitmask)
    and only the colours in symmetric are interchangeable.
    """
    return _search(graph, k, budget, 1, forbidden, symmetric, pin_anchor=False)


# --- Vizing construction -----------------------------------------------------

class _FanColouring:
    """Misra-Gries style edge insertion with fan rotation and cd-path inversion"""

    def __init__(self, graph: Graph, k: int):
        self.graph = graph
        self.k = k
        self.colour: Dict[Edge, int] = {}
        self.at: List[Dict[int, int]] = [dict() for _ in graph.vertices]

    def free_colours(self, x: int) -> List[int]:
        return [c for c in range(1, self.k + 1) if c not in self.at[x]]

    def is_free(self, x: int, c: int) -> bool:
        return c not in self.at[x]

    def set(self, a: int, b: int, c: int):
        self.colour[Edge.of(a, b)] = c
        self.at[a][c] = b
        self.at[b][c] = a

    def unset(self, a: int, b: int):
        c = self.colour.pop(Edge.of(a, b))
        del self.at[a][c]
        del self.at[b][c]

    def maximal_fan(self, u: int, v: int) -> List[int]:
        fan = [v]
        members = {v}
        extended = True
        while extended:
            extended = False
            for w in sorted(self.graph.adjacency[u]):
                if w in members:
                    continue
                c = self.colour.get(Edge.of(u, w))
                if c is not None and self.is_free(fan[-1], c):
                    fan.append(w)
                    members.add(w)
                    extended = True
                    break
        return fan

    def invert_path(self, start: int, c: int, d: int):
        """Swap c and d along the alternating path leaving start on a d-edge"""
        path = []
        x, want = start, d
        while want in self.at[x]:
            y = self.at[x][want]
            path.append((x, y, want))
            x, want = y, (c if want == d else d)
        for a, b, _ in path:
            self.unset(a, b)
        for a, b, old in path:
            self.set(a, b, c if old == d else d)

    def insert(self, u: int, v: int):
        fan = self.maximal_fan(u, v)
        c = self.free_colours(u)[0]
        d = self.free_colours(fan[-1])[0]
        self.invert_path(u, c, d)

        # longest prefix of the fan that is still a fan, ending where d is free
        end = None
        for j, w in enumerate(fan):
            if j > 0 and not self.is_free(fan[j - 1], self.colour.get(Edge.of(u, w), 0)):
                break
            if self.is_free(w, d):
                end = j
                break
        if end is None:
            raise InvariantViolation(f"no rotatable fan at ({u}, {v})")

        for j in range(end):
            shifted = self.colour[Edge.of(u, fan[j + 1])]
            self.unset(u, fan[j + 1])
            self.set(u, fan[j], shifted)
        self.set(u, fan[end], d)

    def run(self) -> EdgeColouring:
        for u, v in self.graph.edge_list:
            self.insert(u, v)
        return EdgeColouring(self.k, dict(self.colour))


def vizing_colouring(graph: Graph) -> EdgeColouring:
    """A proper (Delta+1)-edge-colouring, always constructed"""
    if graph.m == 0:
        raise ColouringError("no edges to colour")
    colouring = _FanColouring(graph, graph.max_degree + 1).run()
    if not validate_colouring(graph, colouring):
        raise InvariantViolation("fan colouring produced an improper colouring")
    return colouring


@dataclass(frozen=True)
class ChromaticIndex:
    value: int
    colouring: EdgeColouring
    max_degree: int

    @property
    def class_of(self) -> int:
        """1 when the chromatic index equals Delta, 2 when it is Delta+1"""
        return 1 if self.value == self.max_degree else 2


def chromatic_index(graph: Graph, budget: Optional[int] = None,
                    threads: Optional[int] = None) -> ChromaticIndex:
    """Delta or Delta+1: try Delta exactly, otherwise fall back to the fan colouring"""
    if graph.m == 0:
        raise ColouringError("no edges to colour")
    delta = graph.max_degree
    result = exact_k_edge_colourable(graph, delta, budget=budget, threads=threads)
    if result.outcome is SearchOutcome.YES:
        return ChromaticIndex(delta, result.colouring, delta)
    if result.outcome is SearchOutcome.NO:
        return ChromaticIndex(delta + 1, vizing_colouring(graph), delta)
    raise BudgetExceeded(f"undecided between {delta} and {delta + 1} after {result.nodes} nodes")
