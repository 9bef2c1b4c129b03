"""
Plain-text formats

Graph file:      first line "n m", then m lines "u v" (0 <= u < v < n).
Colouring file:  lines "u v c" with c in 1..k, any order, covering every edge.
Reduction report: sections [GRAPH] (G' as a graph file), [LAYOUT] (one row per
source vertex) and [EDGEMAP] (lines "u v -> a b").

Lines starting with '#' and blank lines are ignored everywhere.
"""

import logging
from typing import Dict, Iterator, List, Tuple

from ..colouring.colouring import EdgeColouring
from ..core.errors import FormatError, GraphError, InputError
from ..core.graph import Edge, Graph, build_graph
from ..hardness.reduction import Reduction, build_claw_free_instance

logger = logging.getLogger(__name__)


def _content_lines(text: str, start: int = 1) -> Iterator[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=start):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line.split()


def _ints(fields: List[str], count: int, number: int, what: str) -> List[int]:
    if len(fields) != count:
        raise FormatError(f"expected {what}", number)
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise FormatError(f"expected integers in {what}", number) from None


def parse_graph_file(text: str) -> Graph:
    lines = _content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise FormatError("missing header 'n m'", 1) from None
    n, m = _ints(header, 2, number, "header 'n m'")
    if n < 0 or m < 0:
        raise FormatError("negative count in header", number)

    seen = set()
    pairs = []
    for number, fields in lines:
        u, v = _ints(fields, 2, number, "edge 'u v'")
        try:
            edge = Edge.of(u, v)
            build_graph(n, [edge])
        except GraphError as e:
            raise FormatError(str(e), number) from None
        if edge in seen:
            raise FormatError(f"multi-edge ({edge.u}, {edge.v})", number)
        seen.add(edge)
        pairs.append(edge)
    if len(pairs) != m:
        raise FormatError(f"header announces {m} edges, found {len(pairs)}", number)
    return build_graph(n, pairs)


def format_graph(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edge_list)
    return "\n".join(lines) + "\n"


def parse_colouring_file(text: str, k: int) -> EdgeColouring:
    assignment: Dict[Edge, int] = {}
    for number, fields in _content_lines(text):
        u, v, c = _ints(fields, 3, number, "colouring line 'u v c'")
        try:
            edge = Edge.of(u, v)
        except GraphError as e:
            raise FormatError(str(e), number) from None
        if edge in assignment:
            raise FormatError(f"edge ({edge.u}, {edge.v}) coloured twice", number)
        assignment[edge] = c
    return EdgeColouring(k, assignment)


def format_colouring(colouring: EdgeColouring) -> str:
    return "".join(f"{u} {v} {c}\n" for (u, v), c in colouring.items())


def format_reduction_report(reduction: Reduction) -> str:
    lines = [f"# claw-free reduction, k={reduction.k}", "[GRAPH]"]
    lines.append(format_graph(reduction.result).rstrip("\n"))
    lines.append("[LAYOUT]")
    for layout in reduction.layouts:
        one, two = layout.clique_one, layout.clique_two
        lines.append(
            f"{layout.source_vertex}: ports={','.join(map(str, layout.ports))} "
            f"primed={','.join(map(str, layout.primed))} hub={layout.hub} "
            f"k1={min(one)}..{max(one)} k2={min(two)}..{max(two)}"
        )
    lines.append("[EDGEMAP]")
    for (u, v), (a, b) in sorted(reduction.edge_map.items()):
        lines.append(f"{u} {v} -> {a} {b}")
    return "\n".join(lines) + "\n"


def _sections(text: str) -> Dict[str, Tuple[int, List[str]]]:
    sections: Dict[str, Tuple[int, List[str]]] = {}
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            if current in sections:
                raise FormatError(f"duplicate section [{current}]", number)
            sections[current] = (number + 1, [])
        elif current is not None:
            sections[current][1].append(raw)
        elif line and not line.startswith("#"):
            raise FormatError("content before the first section", number)
    for name in ("GRAPH", "LAYOUT", "EDGEMAP"):
        if name not in sections:
            raise FormatError(f"missing section [{name}]")
    return sections


def parse_reduction_report(text: str) -> Reduction:
    """
    Read a report back, rebuild the reduction from the source graph it
    describes, and insist the rebuilt one matches the report exactly.
    """
    sections = _sections(text)

    start, body = sections["LAYOUT"]
    layout_rows = list(_content_lines("\n".join(body), start))
    if not layout_rows:
        raise FormatError("empty [LAYOUT] section", start)
    k = None
    for number, fields in layout_rows:
        ports = next((f for f in fields if f.startswith("ports=")), None)
        if ports is None:
            raise FormatError("layout row without ports", number)
        count = len(ports[len("ports="):].split(","))
        if k is not None and count != k:
            raise FormatError("layout rows disagree on the number of ports", number)
        k = count

    start, body = sections["EDGEMAP"]
    source_edges = []
    for number, fields in _content_lines("\n".join(body), start):
        if len(fields) != 5 or fields[2] != "->":
            raise FormatError("expected 'u v -> a b'", number)
        u, v = _ints(fields[:2], 2, number, "source edge")
        source_edges.append((u, v))

    try:
        source = build_graph(len(layout_rows), source_edges)
        reduction = build_claw_free_instance(source, k)
    except GraphError as e:
        raise InputError(f"reduction report does not describe a valid reduction: {e}") from None

    if format_reduction_report(reduction).splitlines()[1:] != _normalised(text):
        raise InputError("reduction report does not match the reduction of its source graph")
    return reduction


def _normalised(text: str) -> List[str]:
    return [
        " ".join(line.split()) for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
