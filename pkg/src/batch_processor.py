#!/usr/bin/env python3
"""
Batch runner for the experiment suites
Runs every case of the chosen suites and writes results with timing information
"""

import csv
import time
import logging
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Callable, Dict, Iterator, List, Sequence, Tuple
from concurrent.futures import ThreadPoolExecutor, as_completed

from rich.console import Console
from rich.progress import Progress

from .colouring.colouring import (
    SearchOutcome, chromatic_index, exact_k_edge_colourable, validate_colouring,
)
from .core.generators import (
    complete_bipartite_graph, complete_graph, gen_k_regular, small_graph_corpus,
)
from .core.graph import Graph, degree_profile
from .hardness.reduction import (
    audit_gadget_colouring, build_claw_free_instance, extract_colouring, lift_colouring,
)
from .hardness.structured import check_structured, kneven_colouring
from .recognition.recognition import is_pt_free
from .tractable.tractable import PtVerdict, decide_pt_free, size_bound

logger = logging.getLogger(__name__)

FIELDNAMES = ['suite', 'case', 'passed', 'detail', 'time_ms', 'timestamp', 'error']

# (case id, check); a check returns (passed, detail)
Case = Tuple[str, Callable[[], Tuple[bool, str]]]


@dataclass(frozen=True)
class SuiteSettings:
    seed: int
    random_graphs: int = 20
    max_random_vertices: int = 10


def _vizing_cases(settings: SuiteSettings) -> Iterator[Case]:
    """Chromatic index is Delta or Delta+1 and its colouring is proper"""
    def check(graph: Graph) -> Tuple[bool, str]:
        result = chromatic_index(graph)
        ok = (result.value in (result.max_degree, result.max_degree + 1)
              and validate_colouring(graph, result.colouring).valid)
        return ok, f"delta={result.max_degree} chi'={result.value}"

    for i in range(settings.random_graphs):
        n = 4 + i % (settings.max_random_vertices - 3)
        k = 2 + i % 3
        if k >= n or (n * k) % 2:
            k -= 1
        graph = gen_k_regular(n, k, seed=settings.seed + i)
        yield f"regular n={n} k={k} seed={settings.seed + i}", lambda g=graph: check(g)


def _kneven_cases(settings: SuiteSettings) -> Iterator[Case]:
    def check(k: int) -> Tuple[bool, str]:
        problems = check_structured(kneven_colouring(k))
        return not problems, "; ".join(problems) or "structured"

    for k in range(2, 13, 2):
        yield f"K_{k}", lambda k=k: check(k)


def _gadget_instances(settings: SuiteSettings) -> Iterator[Tuple[str, Graph, int]]:
    yield "K_5", complete_graph(5), 4
    yield "K_4,4", complete_bipartite_graph(4, 4), 4
    yield "K_7", complete_graph(7), 6
    for offset, n in enumerate((8, 10, 12)):
        yield f"random n={n} k=4", gen_k_regular(n, 4, seed=settings.seed + offset), 4
    for offset, n in enumerate((8, 10, 12)):
        yield f"random n={n} k=6", gen_k_regular(n, 6, seed=settings.seed + offset), 6


def _gadget_cases(settings: SuiteSettings) -> Iterator[Case]:
    """Structure of G' plus the lift / extract round trip through a colouring of G"""
    def check(graph: Graph, k: int) -> Tuple[bool, str]:
        reduction = build_claw_free_instance(graph, k)
        profile = degree_profile(reduction.result)
        detail = f"n'={reduction.result.n} m'={reduction.result.m}"
        source = exact_k_edge_colourable(graph, k)
        if source.outcome is not SearchOutcome.YES:
            return source.outcome is SearchOutcome.NO, f"{detail} source {source.outcome.value}"
        lifted = lift_colouring(reduction, source.colouring)
        back = extract_colouring(reduction, lifted)
        audits = audit_gadget_colouring(reduction, lifted)
        ok = (profile.is_regular and back.assignment == source.colouring.assignment
              and all(a.consistent for a in audits))
        return ok, f"{detail} lifted and extracted"

    for name, graph, k in _gadget_instances(settings):
        yield f"{name} k={k}", lambda g=graph, k=k: check(g, k)


def _size_bound_cases(settings: SuiteSettings) -> Iterator[Case]:
    expected = {(3, 4): 8, (3, 6): 32, (4, 6): 50, (3, 5): 32, (4, 4): 10}
    for (k, t), value in expected.items():
        yield f"f({k},{t})", lambda k=k, t=t, value=value: (
            size_bound(k, t).value == value, f"f={size_bound(k, t).value}"
        )


def _pt_free_cases(settings: SuiteSettings) -> Iterator[Case]:
    """The P_t-free decision agrees with exact search on every small P_5-free graph"""
    def check(k: int) -> Tuple[bool, str]:
        checked = 0
        for graph in small_graph_corpus(7):
            if not is_pt_free(graph, 5):
                continue
            decision = decide_pt_free(graph, k, 5)
            exact = exact_k_edge_colourable(graph, k)
            if (decision.verdict is PtVerdict.YES) != (exact.outcome is SearchOutcome.YES):
                return False, f"disagreement on {graph} ({graph.edge_list})"
            checked += 1
        return True, f"{checked} graphs agree"

    for k in (3, 4):
        yield f"P_5-free k={k}", lambda k=k: check(k)


SUITES: Dict[str, Callable[[SuiteSettings], Iterator[Case]]] = {
    'vizing': _vizing_cases,
    'kneven': _kneven_cases,
    'gadget': _gadget_cases,
    'size-bound': _size_bound_cases,
    'pt-free': _pt_free_cases,
}


class ExperimentBatch:
    """Run experiment suites in batch mode"""

    def __init__(self, parallel: bool = False, workers: int = 4, seed: int = 0):
        self.parallel = parallel
        self.workers = workers
        self.settings = SuiteSettings(seed=seed)

    def run_case(self, suite: str, case_id: str, check: Callable[[], Tuple[bool, str]]) -> Dict[str, Any]:
        """Run a single case and return its row with timing"""
        start_time = time.time()
        try:
            passed, detail = check()
            error = None
        except Exception as e:
            logger.error(f"Error in case {suite}/{case_id}: {str(e)}")
            passed, detail, error = False, "", str(e)

        return {
            'suite': suite,
            'case': case_id,
            'passed': passed,
            'detail': detail,
            'time_ms': int((time.time() - start_time) * 1000),
            'timestamp': datetime.now().isoformat(),
            'error': error,
        }

    def collect(self, suites: Sequence[str]) -> List[Tuple[int, str, Case]]:
        cases = []
        for suite in suites:
            for case in SUITES[suite](self.settings):
                cases.append((len(cases), suite, case))
        return cases

    def run(self, suites: Sequence[str], output_file: str) -> List[Dict[str, Any]]:
        """Run every case of the suites and write the result rows to output_file"""
        cases = self.collect(suites)
        logger.info(f"Loaded {len(cases)} cases from {len(suites)} suite(s)")
        rows: Dict[int, Dict[str, Any]] = {}

        with Progress(transient=True, console=Console(stderr=True)) as progress:
            task = progress.add_task("Running cases", total=len(cases))
            if self.parallel:
                logger.info(f"Running cases in parallel with {self.workers} workers")
                with ThreadPoolExecutor(max_workers=self.workers) as executor:
                    futures = {
                        executor.submit(self.run_case, suite, case_id, check): index
                        for index, suite, (case_id, check) in cases
                    }
                    for future in as_completed(futures):
                        rows[futures[future]] = future.result()
                        progress.advance(task)
            else:
                for index, suite, (case_id, check) in cases:
                    rows[index] = self.run_case(suite, case_id, check)
                    progress.advance(task)

        results = [rows[i] for i in sorted(rows)]
        with open(output_file, 'w', encoding='utf-8', newline='') as f:
            writer = csv.DictWriter(f, fieldnames=FIELDNAMES)
            writer.writeheader()
            writer.writerows(results)

        passed = sum(1 for r in results if r['passed'])
        avg_time = sum(r['time_ms'] for r in results) / len(results) if results else 0
        logger.info(f"Total cases: {len(results)}, passed: {passed}, failed: {len(results) - passed}")
        logger.info(f"Average case time: {avg_time:.0f}ms")
        logger.info(f"Results written to: {output_file}")
        return results
