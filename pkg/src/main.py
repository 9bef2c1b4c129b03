#!/usr/bin/env python3

import sys
import time
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import click
from pydantic import BaseModel, Field
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from .config import config
from .core.errors import BudgetExceeded, EdgeColouringError, InputError, InvariantViolation
from .core.generators import gen_k_regular
from .core.graph import Graph, degree_profile
from .colouring.colouring import (
    SearchOutcome, chromatic_index, exact_k_edge_colourable, validate_colouring,
)
from .hardness.reduction import build_claw_free_instance, extract_colouring, lift_colouring
from .hardness.structured import kneven_colouring
from .io.formats import (
    format_colouring, format_graph, format_reduction_report, parse_colouring_file,
    parse_graph_file, parse_reduction_report,
)
from .recognition.recognition import classify_h, complexity_statement, is_h_free
from .tractable.tractable import PtVerdict, decide_pt_free

logger = logging.getLogger(__name__)

# Errors and logs go to stderr so reports on stdout stay deterministic
console = Console(stderr=True)

EXIT_VERDICT = 0
EXIT_INPUT = 2
EXIT_UNDECIDED = 3
EXIT_INVARIANT = 4


class InputSummary(BaseModel):
    n: int
    m: int
    max_degree: int
    regular: bool

    @classmethod
    def of(cls, graph: Graph) -> "InputSummary":
        profile = degree_profile(graph)
        return cls(n=graph.n, m=graph.m, max_degree=profile.max_degree, regular=profile.is_regular)


class RunReport(BaseModel):
    """Self-contained record of one command run"""
    command: str
    input_summary: Optional[InputSummary] = None
    verdict: str
    details: Dict[str, Any] = Field(default_factory=dict)
    certificate_kind: Optional[str] = None
    certificate: Optional[str] = None
    seed: int = 0
    timing_seconds: float = 0.0
    exit_code: int = EXIT_VERDICT

    def render_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.input_summary is not None:
            s = self.input_summary
            lines.append(f"input: n={s.n} m={s.m} max_degree={s.max_degree} regular={str(s.regular).lower()}")
        lines.append(f"verdict: {self.verdict}")
        for key in sorted(self.details):
            lines.append(f"{key}: {self.details[key]}")
        lines.append(f"seed: {self.seed}")
        lines.append(f"timing: {self.timing_seconds:.4f}s")
        if self.certificate is not None:
            lines.append(f"certificate ({self.certificate_kind}):")
            lines.append(self.certificate.rstrip("\n"))
        return "\n".join(lines) + "\n"


def _read_graph(handle) -> Graph:
    return parse_graph_file(handle.read())


def _finish(report: RunReport, started: float, out: Optional[str], as_json: bool) -> RunReport:
    """Stamp timing, move the certificate to --out when given, and print the report"""
    report.timing_seconds = time.perf_counter() - started
    if out is not None and report.certificate is not None:
        Path(out).write_text(report.certificate, encoding="utf-8")
        report.details["certificate_file"] = out
        report.certificate = None
    click.echo(report.model_dump_json(indent=2) if as_json else report.render_text(), nl=False)
    return report


def report_options(f: Callable) -> Callable:
    f = click.option('--json', 'as_json', is_flag=True, help='Print a machine-readable report')(f)
    f = click.option('--out', type=click.Path(dir_okay=False), default=None,
                     help='Write the certificate to this file instead of the report')(f)
    f = click.option('--seed', type=int, default=None, help='Randomness seed recorded in the report')(f)
    return f


def search_options(f: Callable) -> Callable:
    f = click.option('--threads', type=int, default=None, help='Worker threads for the exact search')(f)
    f = click.option('--budget', type=int, default=None, help='Decision-node budget (default 10^8)')(f)
    return f


def _seed(seed: Optional[int]) -> int:
    return config.generator.default_seed if seed is None else seed


@click.group()
@click.option('--debug', is_flag=True, help='Enable debug logging')
def cli(debug: bool):
    """Edge colouring on H-free graphs: solvers, reductions and certificates"""
    level = logging.DEBUG if debug else getattr(logging, config.app.log_level, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(name)s: %(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


@cli.command('chromatic-index')
@click.argument('graph_file', type=click.File('r'))
@search_options
@report_options
def chromatic_index_command(graph_file, budget, threads, seed, out, as_json):
    """Chromatic index (Delta or Delta+1) with a certificate colouring"""
    started = time.perf_counter()
    graph = _read_graph(graph_file)
    result = chromatic_index(graph, budget=budget, threads=threads)
    report = RunReport(
        command="chromatic-index",
        input_summary=InputSummary.of(graph),
        verdict=f"chromatic index {result.value} (class {'one' if result.class_of == 1 else 'two'})",
        details={"max_degree": result.max_degree},
        certificate_kind="colouring",
        certificate=format_colouring(result.colouring),
        seed=_seed(seed),
    )
    return _finish(report, started, out, as_json)


@cli.command('decide')
@click.argument('graph_file', type=click.File('r'))
@click.option('--k', 'k', type=int, required=True, help='Number of colours')
@search_options
@report_options
def decide_command(graph_file, k, budget, threads, seed, out, as_json):
    """Exact k-edge-colourability"""
    started = time.perf_counter()
    graph = _read_graph(graph_file)
    result = exact_k_edge_colourable(graph, k, budget=budget, threads=threads)
    verdict = {
        SearchOutcome.YES: "Yes",
        SearchOutcome.NO: "No (exhaustive)",
        SearchOutcome.BUDGET_EXCEEDED: "Undecided (budget exceeded)",
    }[result.outcome]
    certificate, kind = None, None
    if result.colouring is not None:
        certificate, kind = format_colouring(result.colouring), "colouring"
    elif result.overfull is not None:
        certificate, kind = " ".join(str(v) for v in sorted(result.overfull)) + "\n", "overfull set"
    report = RunReport(
        command="decide",
        input_summary=InputSummary.of(graph),
        verdict=verdict,
        details={"k": k, "nodes": result.nodes},
        certificate_kind=kind,
        certificate=certificate,
        seed=_seed(seed),
        exit_code=EXIT_VERDICT if result.decided else EXIT_UNDECIDED,
    )
    return _finish(report, started, out, as_json)


@cli.command('classify-h')
@click.argument('graph_file', type=click.File('r'))
@click.option('--k', 'k', type=int, default=None, help='Number of colours (k >= 3) for the verdict')
@report_options
def classify_h_command(graph_file, k, seed, out, as_json):
    """Dichotomy case of a forbidden graph H"""
    started = time.perf_counter()
    pattern = _read_graph(graph_file)
    if k is not None and k < 3:
        raise InputError(f"k must be at least 3, got {k}")
    classification = classify_h(pattern)
    details: Dict[str, Any] = {"case": classification.case.value}
    if classification.is_linear_forest:
        details.update(components=classification.components, t=classification.path_bound,
                       product_t=classification.product_bound,
                       minimal_t=classification.minimal_path_bound)
    report = RunReport(
        command="classify-h",
        input_summary=InputSummary.of(pattern),
        verdict=complexity_statement(classification, k),
        details=details,
        certificate_kind="witness",
        certificate=" ".join(map(str, _flatten(classification.witness))) + "\n",
        seed=_seed(seed),
    )
    return _finish(report, started, out, as_json)


def _flatten(witness) -> List[int]:
    flat = []
    for item in witness:
        flat.extend(_flatten(item) if isinstance(item, tuple) else [item])
    return flat


@cli.command('hfree')
@click.argument('graph_file', type=click.File('r'))
@click.option('--h', 'h_file', type=click.File('r'), required=True, help='Forbidden graph H')
@report_options
def hfree_command(graph_file, h_file, seed, out, as_json):
    """Whether the graph has no induced copy of H"""
    started = time.perf_counter()
    graph = _read_graph(graph_file)
    pattern = _read_graph(h_file)
    result = is_h_free(graph, pattern)
    witness = None
    if not result:
        witness = "".join(f"{h} -> {g}\n" for h, g in sorted(result.witness.items()))
    report = RunReport(
        command="hfree",
        input_summary=InputSummary.of(graph),
        verdict="H-free" if result else "not H-free",
        details={"h_vertices": pattern.n, "h_edges": pattern.m},
        certificate_kind="embedding" if witness else None,
        certificate=witness,
        seed=_seed(seed),
    )
    return _finish(report, started, out, as_json)


@cli.command('reduce')
@click.argument('graph_file', type=click.File('r'))
@click.option('--k', 'k', type=int, required=True, help='Even number of colours (>= 4)')
@click.option('--threads', type=int, default=None, help='Worker threads for gadget assembly')
@report_options
def reduce_command(graph_file, k, threads, seed, out, as_json):
    """Claw-free k-regular instance equivalent to a k-regular graph"""
    started = time.perf_counter()
    graph = _read_graph(graph_file)
    reduction = build_claw_free_instance(graph, k, threads=threads)
    report = RunReport(
        command="reduce",
        input_summary=InputSummary.of(graph),
        verdict=f"reduced to a {k}-regular claw-free graph",
        details={"k": k, "reduced_n": reduction.result.n, "reduced_m": reduction.result.m},
        certificate_kind="reduction",
        certificate=format_reduction_report(reduction),
        seed=_seed(seed),
    )
    return _finish(report, started, out, as_json)


def _transfer(command: str, report_file, colouring_file, seed, out, as_json, forward: bool) -> RunReport:
    started = time.perf_counter()
    reduction = parse_reduction_report(report_file.read())
    colouring = parse_colouring_file(colouring_file.read(), reduction.k)
    if forward:
        moved, graph = lift_colouring(reduction, colouring), reduction.result
    else:
        moved, graph = extract_colouring(reduction, colouring), reduction.source
    report = RunReport(
        command=command,
        input_summary=InputSummary.of(graph),
        verdict=f"proper {reduction.k}-edge-colouring",
        details={"k": reduction.k},
        certificate_kind="colouring",
        certificate=format_colouring(moved),
        seed=_seed(seed),
    )
    return _finish(report, started, out, as_json)


@cli.command('lift')
@click.argument('report_file', type=click.File('r'))
@click.option('--colouring', 'colouring_file', type=click.File('r'), required=True)
@report_options
def lift_command(report_file, colouring_file, seed, out, as_json):
    """Carry a colouring of G onto the reduced graph"""
    return _transfer("lift", report_file, colouring_file, seed, out, as_json, forward=True)


@cli.command('extract')
@click.argument('report_file', type=click.File('r'))
@click.option('--colouring', 'colouring_file', type=click.File('r'), required=True)
@report_options
def extract_command(report_file, colouring_file, seed, out, as_json):
    """Restrict a colouring of the reduced graph back onto G"""
    return _transfer("extract", report_file, colouring_file, seed, out, as_json, forward=False)


@cli.command('kneven')
@click.option('--k', 'k', type=int, required=True, help='Even number of colours')
@report_options
def kneven_command(k, seed, out, as_json):
    """Structured k-edge-colouring of K_k"""
    started = time.perf_counter()
    structured = kneven_colouring(k)
    header = "".join(
        f"# pair {i}: {a} {b} miss {structured.pair_missed[i]}\n"
        for i, (a, b) in enumerate(structured.pairs)
    )
    report = RunReport(
        command="kneven",
        verdict=f"structured {k}-edge-colouring of K_{k}",
        details={"k": k, "pairs": k // 2},
        certificate_kind="colouring",
        certificate=header + format_colouring(structured.colouring),
        seed=_seed(seed),
    )
    return _finish(report, started, out, as_json)


@cli.command('decide-ptfree')
@click.argument('graph_file', type=click.File('r'))
@click.option('--k', 'k', type=int, required=True, help='Number of colours (>= 3)')
@click.option('--t', 't', type=int, required=True, help='Forbidden path length')
@search_options
@report_options
def decide_ptfree_command(graph_file, k, t, budget, threads, seed, out, as_json):
    """Constant-time decision for P_t-free graphs"""
    started = time.perf_counter()
    graph = _read_graph(graph_file)
    decision = decide_pt_free(graph, k, t, budget=budget, threads=threads)
    certificate, kind = None, None
    if decision.verdict is PtVerdict.YES:
        certificate, kind = format_colouring(decision.colouring), "colouring"
    elif decision.verdict is PtVerdict.INPUT_NOT_PT_FREE:
        certificate, kind = " ".join(map(str, decision.witness)) + "\n", "induced path"
    report = RunReport(
        command="decide-ptfree",
        input_summary=InputSummary.of(graph),
        verdict=decision.verdict.value,
        details={"k": k, "t": t, "reason": decision.reason, "components": len(decision.components)},
        certificate_kind=kind,
        certificate=certificate,
        seed=_seed(seed),
        exit_code=EXIT_INPUT if decision.verdict is PtVerdict.INPUT_NOT_PT_FREE else EXIT_VERDICT,
    )
    return _finish(report, started, out, as_json)


@cli.command('gen-regular')
@click.option('--n', 'n', type=int, required=True, help='Number of vertices')
@click.option('--k', 'k', type=int, required=True, help='Degree')
@report_options
def gen_regular_command(n, k, seed, out, as_json):
    """Seeded random simple k-regular graph"""
    started = time.perf_counter()
    seed = _seed(seed)
    graph = gen_k_regular(n, k, seed=seed)
    report = RunReport(
        command="gen-regular",
        input_summary=InputSummary.of(graph),
        verdict=f"{k}-regular graph on {n} vertices",
        certificate_kind="graph",
        certificate=format_graph(graph),
        seed=seed,
    )
    return _finish(report, started, out, as_json)


@cli.command('verify')
@click.argument('graph_file', type=click.File('r'))
@click.option('--colouring', 'colouring_file', type=click.File('r'), required=True)
@click.option('--k', 'k', type=int, required=True, help='Number of colours')
@report_options
def verify_command(graph_file, colouring_file, k, seed, out, as_json):
    """Check a colouring file against a graph"""
    started = time.perf_counter()
    graph = _read_graph(graph_file)
    colouring = parse_colouring_file(colouring_file.read(), k)
    result = validate_colouring(graph, colouring)
    details: Dict[str, Any] = {"k": k}
    if not result:
        c = result.conflict
        details["conflict"] = (f"vertex {c.vertex}: ({c.first.u}, {c.first.v}) and "
                               f"({c.second.u}, {c.second.v}) both coloured {c.colour}")
    report = RunReport(
        command="verify",
        input_summary=InputSummary.of(graph),
        verdict="valid" if result else "invalid",
        details=details,
        seed=_seed(seed),
    )
    return _finish(report, started, out, as_json)


@cli.command('batch')
@click.option('--suite', 'suites', multiple=True, help='Experiment suite to run (repeatable; default all)')
@click.option('--output', '-o', type=click.Path(dir_okay=False), required=True, help='Output CSV file')
@click.option('--parallel', '-p', is_flag=True, help='Run cases in parallel')
@click.option('--workers', '-w', type=int, default=4, help='Number of parallel workers')
@click.option('--seed', type=int, default=None, help='Seed for the random instances')
def batch_command(suites, output, parallel, workers, seed):
    """Run experiment suites and write a CSV of results"""
    from .batch_processor import SUITES, ExperimentBatch

    started = time.perf_counter()
    names = list(suites) or list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise click.UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    batch = ExperimentBatch(parallel=parallel, workers=workers, seed=_seed(seed))
    results = batch.run(names, output)

    table = Table(title="Experiment Suites", show_header=True, header_style="bold cyan")
    table.add_column("Suite", style="cyan")
    table.add_column("Cases", justify="right")
    table.add_column("Passed", justify="right", style="green")
    for name in names:
        rows = [r for r in results if r['suite'] == name]
        table.add_row(name, str(len(rows)), str(sum(1 for r in rows if r['passed'])))
    console.print(table)

    failed = sum(1 for r in results if not r['passed'])
    report = RunReport(
        command="batch",
        verdict="all cases passed" if not failed else f"{failed} case(s) failed",
        details={"cases": len(results), "output": output, "suites": ",".join(names)},
        seed=_seed(seed),
        exit_code=EXIT_VERDICT if not failed else EXIT_INVARIANT,
    )
    return _finish(report, started, None, False)


def run_command(argv: Sequence[str]) -> Any:
    """Run one CLI invocation and hand back its RunReport; errors propagate"""
    return cli.main(args=list(argv), prog_name="edgecol", standalone_mode=False)


def main(argv: Optional[Sequence[str]] = None):
    """Edge colouring toolkit - CLI entry point"""
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        config.validate()
        result = run_command(args)
    except click.ClickException as e:
        e.show()
        sys.exit(EXIT_INPUT)
    except click.Abort:
        sys.exit(EXIT_INPUT)
    except BudgetExceeded as e:
        console.print(f"[yellow]Undecided: {e}[/yellow]")
        sys.exit(EXIT_UNDECIDED)
    except InvariantViolation as e:
        console.print(f"[red]Internal invariant violated: {e}[/red]")
        logger.error(f"Invariant violation: {e}", exc_info=True)
        sys.exit(EXIT_INVARIANT)
    except (InputError, ValueError) as e:
        console.print(f"[red]Input error: {e}[/red]")
        sys.exit(EXIT_INPUT)
    except EdgeColouringError as e:
        console.print(f"[red]Error: {e}[/red]")
        sys.exit(EXIT_INPUT)
    except OSError as e:
        console.print(f"[red]I/O error: {e}[/red]")
        sys.exit(EXIT_INPUT)

    sys.exit(result.exit_code if isinstance(result, RunReport) else (result or 0))


if __name__ == "__main__":
    main()
