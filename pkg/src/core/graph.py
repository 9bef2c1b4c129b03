"""
Simple undirected graphs on dense integer vertex ids

Vertices are 0..n-1. Graph values are immutable once built, so they can be
shared freely between worker threads.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from .errors import GraphError

logger = logging.getLogger(__name__)


class Edge(NamedTuple):
    """Unordered vertex pair in canonical form (u < v)"""
    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        if a == b:
            raise GraphError(f"loop at vertex {a}")
        return cls(a, b) if a < b else cls(b, a)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; build instances through build_graph"""
    n: int
    edges: FrozenSet[Edge]
    adjacency: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        neighbours: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            neighbours[u].add(v)
            neighbours[v].add(u)
        object.__setattr__(self, "adjacency", tuple(frozenset(s) for s in neighbours))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_list(self) -> List[Edge]:
        """Edges in canonical (lexicographic) order"""
        return sorted(self.edges)

    def neighbours(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, a: int, b: int) -> bool:
        return 0 <= a < self.n and b in self.adjacency[a]

    def incident_edges(self, v: int) -> List[Edge]:
        """Edges at v, ordered by neighbour id"""
        return [Edge.of(v, w) for w in sorted(self.adjacency[v])]

    @property
    def max_degree(self) -> int:
        return max((len(s) for s in self.adjacency), default=0)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edge_list)
        return g

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class DegreeProfile(NamedTuple):
    max_degree: int
    min_degree: int
    is_regular: bool


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Validate an edge list and build a simple graph on vertices 0..n-1"""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    edges = set()
    for pair in edge_list:
        a, b = int(pair[0]), int(pair[1])
        if a == b:
            raise GraphError(f"loop at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"vertex out of range: ({a}, {b}) with n={n}")
        edge = Edge.of(a, b)
        if edge in edges:
            raise GraphError(f"multi-edge ({edge.u}, {edge.v})")
        edges.add(edge)
    return Graph(n, frozenset(edges))


def from_networkx(g: nx.Graph) -> Graph:
    """Relabel an arbitrary networkx graph onto 0..n-1 by sorted node order"""
    order = {node: i for i, node in enumerate(sorted(g.nodes()))}
    return build_graph(len(order), [(order[a], order[b]) for a, b in g.edges()])


def degree_profile(graph: Graph) -> DegreeProfile:
    if graph.n == 0:
        return DegreeProfile(0, 0, True)
    degrees = [len(s) for s in graph.adjacency]
    hi, lo = max(degrees), min(degrees)
    return DegreeProfile(hi, lo, hi == lo)


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """
    Induced subgraph G[S], relabelled 0..|S|-1 by ascending original id.

    Returns the subgraph and the map original id -> new id.
    """
    chosen = sorted(set(vertices))
    for v in chosen:
        if not 0 <= v < graph.n:
            raise GraphError(f"vertex out of range: {v} with n={graph.n}")
    relabel = {v: i for i, v in enumerate(chosen)}
    edges = [
        (relabel[u], relabel[v]) for u, v in graph.edges
        if u in relabel and v in relabel
    ]
    return build_graph(len(chosen), edges), relabel


def line_graph(graph: Graph) -> Tuple[Graph, Dict[Edge, int]]:
    """L(G): one vertex per edge, adjacent when the edges share an endpoint"""
    index = {edge: i for i, edge in enumerate(graph.edge_list)}
    edges = set()
    for v in graph.vertices:
        for e, f in combinations(graph.incident_edges(v), 2):
            edges.add(Edge.of(index[e], index[f]))
    return Graph(len(index), frozenset(edges)), index


def connected_components(graph: Graph) -> List[FrozenSet[int]]:
    """Vertex sets of the components, ordered by smallest member"""
    seen = [False] * graph.n
    components = []
    for root in graph.vertices:
        if seen[root]:
            continue
        seen[root] = True
        members = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in graph.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    members.append(y)
                    queue.append(y)
        components.append(frozenset(members))
    return components


def is_connected(graph: Graph, vertices: Optional[Iterable[int]] = None) -> bool:
    """Whether G (or G[S] when S is given) is connected; the empty set counts as connected"""
    pool = set(graph.vertices if vertices is None else vertices)
    if not pool:
        return True
    root = next(iter(pool))
    reached = {root}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in graph.adjacency[x]:
            if y in pool and y not in reached:
                reached.add(y)
                stack.append(y)
    return len(reached) == len(pool)


def complement(graph: Graph) -> Graph:
    edges = [
        (a, b) for a, b in combinations(graph.vertices, 2)
        if b not in graph.adjacency[a]
    ]
    return build_graph(graph.n, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    """G1 + G2 + ..., each later graph shifted past the previous ones"""
    offset = 0
    edges = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return build_graph(offset, edges)
