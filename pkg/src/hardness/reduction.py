"""
Claw-free gadget reduction for even k.

Each vertex v of a k-regular graph G becomes a block of 2k+1 vertices,
allocated in ascending source-id order. With l = k/2 the block offsets are

    0 .. l-1     ports   v_1 .. v_l          (clique K_1)
    l .. 2l-1    primed  v'_1 .. v'_l        (clique K_1)
    2l .. 3l-1   ports   v_{l+1} .. v_{2l}   (clique K_2)
    3l .. 4l-1   primed  v'_{l+1} .. v'_{2l} (clique K_2)
    4l           hub w

Port v_j carries the edge to the j-th neighbour of v in ascending id order,
and every primed vertex is joined to the hub.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from ..colouring.colouring import EdgeColouring, validate_colouring
from ..config import config
from ..core.errors import ColouringError, GraphError, InvariantViolation
from ..core.graph import Edge, Graph, build_graph, degree_profile
from ..recognition.recognition import is_claw_free
from .structured import StructuredKkColouring, kneven_colouring

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GadgetLayout:
    """Vertex ids of the gadget H(v) inside the reduced graph"""
    source_vertex: int
    ports: Tuple[int, ...]
    primed: Tuple[int, ...]
    hub: int

    @property
    def clique_one(self) -> Tuple[int, ...]:
        half = len(self.ports) // 2
        return self.ports[:half] + self.primed[:half]

    @property
    def clique_two(self) -> Tuple[int, ...]:
        half = len(self.ports) // 2
        return self.ports[half:] + self.primed[half:]


@dataclass(frozen=True)
class Reduction:
    source: Graph
    k: int
    result: Graph
    layouts: Tuple[GadgetLayout, ...]
    edge_map: Dict[Edge, Edge]


def gadget_layout(v: int, k: int) -> GadgetLayout:
    half = k // 2
    base = v * (2 * k + 1)
    ports = tuple(range(base, base + half)) + tuple(range(base + 2 * half, base + 3 * half))
    primed = tuple(range(base + half, base + 2 * half)) + tuple(range(base + 3 * half, base + 4 * half))
    return GadgetLayout(v, ports, primed, base + 2 * k)


def _gadget_edges(layout: GadgetLayout) -> List[Tuple[int, int]]:
    edges = list(combinations(layout.clique_one, 2))
    edges.extend(combinations(layout.clique_two, 2))
    edges.extend((p, layout.hub) for p in layout.primed)
    return edges


def port_of(graph: Graph, v: int, neighbour: int, layout: GadgetLayout) -> int:
    """Port of H(v) that carries the edge to neighbour"""
    return layout.ports[sorted(graph.adjacency[v]).index(neighbour)]


def structural_problems(reduction: Reduction) -> List[str]:
    """Structural invariants of a reduced graph; empty when all hold"""
    n, k, result = reduction.source.n, reduction.k, reduction.result
    problems = []
    profile = degree_profile(result)
    if result.n and not (profile.is_regular and profile.max_degree == k):
        problems.append(f"reduced graph is not {k}-regular")
    if result.n != n * (2 * k + 1):
        problems.append(f"expected {n * (2 * k + 1)} vertices, found {result.n}")
    if result.m != n * k * k + n * k // 2:
        problems.append(f"expected {n * k * k + n * k // 2} edges, found {result.m}")
    claw = is_claw_free(result)
    if not claw:
        problems.append(f"claw centred at {claw.witness[0]}")
    ports = [p for edge in reduction.edge_map.values() for p in edge]
    if len(ports) != len(set(ports)) or len(ports) != n * k:
        problems.append("edge map does not use every port exactly once")
    return problems


def build_claw_free_instance(graph: Graph, k: int, threads: Optional[int] = None) -> Reduction:
    """Replace every vertex of a k-regular graph by its gadget and wire the ports"""
    if k % 2:
        raise GraphError(f"k must be even, got {k}")
    if k < 4:
        raise GraphError(f"k must be at least 4, got {k}")
    profile = degree_profile(graph)
    if graph.n == 0 or not profile.is_regular or profile.max_degree != k:
        raise GraphError(f"regularity violated: graph is not {k}-regular")

    threads = threads or config.solver.threads
    vertices = list(graph.vertices)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            layouts = list(executor.map(lambda v: gadget_layout(v, k), vertices))
            blocks = list(executor.map(_gadget_edges, layouts))
    else:
        layouts = [gadget_layout(v, k) for v in vertices]
        blocks = [_gadget_edges(layout) for layout in layouts]

    edges = [edge for block in blocks for edge in block]
    edge_map: Dict[Edge, Edge] = {}
    for u, v in graph.edge_list:
        link = Edge.of(port_of(graph, u, v, layouts[u]), port_of(graph, v, u, layouts[v]))
        edge_map[Edge(u, v)] = link
        edges.append(link)

    result = build_graph(graph.n * (2 * k + 1), edges)
    reduction = Reduction(graph, k, result, tuple(layouts), edge_map)
    problems = structural_problems(reduction)
    if problems:
        raise InvariantViolation(f"reduction invariants failed: {'; '.join(problems)}")
    logger.info(f"reduced {graph} to {result} for k={k}")
    return reduction


def _renaming(structured: StructuredKkColouring, targets: List[int]) -> Dict[int, int]:
    """
    Bijection on colours sending the colour missed by pair i to targets[i];
    the remaining colours keep their relative order.
    """
    rename = {structured.pair_missed[i]: colour for i, colour in enumerate(targets)}
    rest_from = [c for c in range(1, structured.k + 1) if c not in rename]
    rest_to = [c for c in range(1, structured.k + 1) if c not in targets]
    rename.update(zip(rest_from, rest_to))
    return rename


def lift_colouring(reduction: Reduction, colouring: EdgeColouring) -> EdgeColouring:
    """
    Turn a k-edge-colouring of G into one of G': pendant edges copy G's colours,
    each clique gets the structured colouring renamed so port v_j and its
    primed partner miss the pendant colour, and that colour goes on the hub edge.
    """
    k, source = reduction.k, reduction.source
    try:
        proper = colouring.k <= k and validate_colouring(source, colouring).valid
    except ColouringError:
        proper = False
    if not proper:
        raise ColouringError("invalid source colouring")

    structured = kneven_colouring(k)
    half = k // 2
    lifted: Dict[Edge, int] = {}
    for (u, v), link in reduction.edge_map.items():
        lifted[link] = colouring.colour_of(u, v)

    for layout in reduction.layouts:
        pendant = [lifted[_pendant_edge(reduction, layout, p)] for p in layout.ports]
        for side in (0, 1):
            ports = layout.ports[side * half:(side + 1) * half]
            primed = layout.primed[side * half:(side + 1) * half]
            rename = _renaming(structured, pendant[side * half:(side + 1) * half])
            # structured vertex 2i -> port, 2i+1 -> primed partner
            position = {}
            for i in range(half):
                position[2 * i] = ports[i]
                position[2 * i + 1] = primed[i]
            for (a, b), colour in structured.colouring.items():
                lifted[Edge.of(position[a], position[b])] = rename[colour]
            for i in range(half):
                lifted[Edge.of(primed[i], layout.hub)] = pendant[side * half + i]

    result = EdgeColouring(k, lifted)
    if not validate_colouring(reduction.result, result):
        raise InvariantViolation("lifted colouring is improper")
    return result


def _pendant_edge(reduction: Reduction, layout: GadgetLayout, port: int) -> Edge:
    v = layout.source_vertex
    j = layout.ports.index(port)
    u = sorted(reduction.source.adjacency[v])[j]
    return reduction.edge_map[Edge.of(u, v)]


def extract_colouring(reduction: Reduction, colouring: EdgeColouring) -> EdgeColouring:
    """Restrict a k-edge-colouring of G' along the edge map back onto G"""
    try:
        proper = colouring.k <= reduction.k and validate_colouring(reduction.result, colouring).valid
    except ColouringError:
        proper = False
    if not proper:
        raise ColouringError("invalid target colouring")

    extracted = EdgeColouring(reduction.k, {
        edge: colouring.assignment[link] for edge, link in reduction.edge_map.items()
    })
    if not validate_colouring(reduction.source, extracted):
        raise InvariantViolation("extraction soundness violated")
    return extracted


@dataclass(frozen=True)
class GadgetAudit:
    source_vertex: int
    side: int
    hub_colours: Tuple[int, ...]
    pendant_colours: Tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return sorted(self.hub_colours) == sorted(self.pendant_colours)


def audit_gadget_colouring(reduction: Reduction, colouring: EdgeColouring) -> List[GadgetAudit]:
    """
    Per gadget side, the hub-edge colours next to the pendant colours. In any
    proper k-colouring of G' they coincide, since otherwise a clique minus one
    primed vertex, of odd order k-1, would need a perfect matching in one colour.
    """
    if not validate_colouring(reduction.result, colouring):
        raise ColouringError("invalid target colouring")
    half = reduction.k // 2
    audits = []
    for layout in reduction.layouts:
        for side in (0, 1):
            span = slice(side * half, (side + 1) * half)
            hub = tuple(colouring.colour_of(p, layout.hub) for p in layout.primed[span])
            pendant = tuple(
                colouring.assignment[_pendant_edge(reduction, layout, p)] for p in layout.ports[span]
            )
            audits.append(GadgetAudit(layout.source_vertex, side, hub, pendant))
    return audits
