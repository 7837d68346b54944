"""Verification suites: exhaustive and seeded-sampled sweeps over graphs and chord diagrams.

Every suite returns a SuiteReport. Task lists are built (and all random
choices drawn) in the calling process; workers only evaluate, so a report is
identical for any worker count.
"""
import logging
import random
import time
from dataclasses import dataclass, field, replace
from itertools import product as cartesian
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.canonical import canonical_key, enumerate_graphs, enumerate_up_to, random_graph
from src.chords import (
    REP2,
    ChordDiagram,
    enumerate_diagrams,
    generate_all_4t,
    intersection_graph,
    product_at,
    w_at_c38,
)
from src.config import GuardsConfig, SweepConfig
from src.dyadic import MINUS_ONE_EIGHTH, ONE_HALF, THREE_EIGHTHS, ZERO
from src.errors import SizeGuardError
from src.graph import MAX_VERTICES, Graph, empty
from src.graph6 import to_graph6
from src.invariants import EVALUATORS, PHI_EVALUATORS, check_bound, is_discrete, phi_eulerian, psi
from src.parallel import parallel_map
from src.relations import (
    check_4t,
    check_6t,
    check_delcont,
    check_delcont_var,
    check_leaf_deletion,
    check_multiplicativity,
    check_triangle,
    symbolic_cancellation,
)
from src.reports import SuiteReport

logger = logging.getLogger(__name__)

Outcome = Tuple[int, List[Dict]]


@dataclass
class SweepContext:
    """Bounds, seed and worker count shared by the suites of one run.

    max_n bounds graph suites, host_n bounds the host graphs of the relation
    suites, max_chords bounds the chord-diagram suite; None means the
    configured default. `graphs` replaces built-in enumeration by an external
    graph6 stream.
    """
    sweeps: SweepConfig = field(default_factory=SweepConfig)
    guards: GuardsConfig = field(default_factory=GuardsConfig)
    max_n: Optional[int] = None
    host_n: Optional[int] = None
    max_chords: Optional[int] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    workers: int = 1
    verbose: bool = False
    graphs: Optional[List[Graph]] = None

    @property
    def effective_seed(self) -> int:
        return self.sweeps.seed if self.seed is None else self.seed

    def rng(self, suite: str) -> random.Random:
        """One independent generator per suite, so suites can run in any order."""
        return random.Random(f"{self.effective_seed}:{suite}")

    def sample_count(self, default: int) -> int:
        return default if self.samples is None else self.samples

    def graph_list(self, default_max_n: int) -> List[Graph]:
        if self.graphs is not None:
            max_n = MAX_VERTICES if self.max_n is None else self.max_n
            return list(enumerate_up_to(max_n, source=self.graphs))
        max_n = default_max_n if self.max_n is None else self.max_n
        return list(enumerate_up_to(max_n, max_vertices=self.guards.enumeration_max_vertices))

    def map(self, fn: Callable, tasks: Sequence, desc: str) -> List[Outcome]:
        return parallel_map(fn, tasks, workers=self.workers, desc=desc, verbose=self.verbose)


def _collect(report: SuiteReport, outcomes: Sequence[Outcome]) -> SuiteReport:
    for checked, failures in outcomes:
        report.add(checked, failures)
    return report


def _discrepancies(outcomes: Sequence[Outcome]) -> List[str]:
    """graph6 keys of every phi != psi finding, read before the report caps its records."""
    return [f["graph6"] for _, failures in outcomes for f in failures if f["kind"] == "phi_psi"]


# ----------------------------------------------------------------------
# Worker tasks (module level so the process pool can pickle them)
# ----------------------------------------------------------------------
def _delcont_task(task) -> Outcome:
    graph, guards = task
    failures = []
    edges = graph.edges()
    for u, v in edges:
        verdict = check_delcont(graph, u, v, guards=guards)
        if not verdict:
            failures.append({"graph6": to_graph6(graph), "edge": [u, v], **verdict.as_dict()})
    return len(edges), failures


def _agreement_task(task) -> Outcome:
    graph, names, guards = task
    values = {}
    for name in names:
        try:
            values[name] = EVALUATORS[name](graph, guards=guards)
        except SizeGuardError:
            continue
    if len(set(values.values())) > 1:
        return 1, [{"graph6": to_graph6(graph), "values": {k: str(v) for k, v in values.items()}}]
    return 1, []


def _four_t_task(task) -> Outcome:
    graph, pairs, evaluator, guards = task
    failures = []
    for u, v in pairs:
        verdict = check_4t(graph, u, v, evaluator=evaluator, guards=guards)
        if not verdict:
            failures.append({"graph6": to_graph6(graph), "n": graph.n, "pair": [u, v],
                             **verdict.as_dict()})
    return len(pairs), failures


def _relation_task(task) -> Outcome:
    kind, host, triples, guards = task
    failures = []
    checked = 0

    def record(check: str, x: int, y: int, z: int, extra: Optional[dict] = None) -> None:
        failures.append({"check": check, "host": to_graph6(host), "host_n": host.n,
                         "sets": [x, y, z], **(extra or {})})

    for x, y, z in triples:
        if kind == "triangle":
            checked += 1
            verdict = check_triangle(host, x, y, z, guards=guards)
            if not verdict:
                record("triangle", x, y, z, verdict.as_dict())
        elif kind == "sixT":
            for variant in (1, 2):
                checked += 1
                verdict = check_6t(host, x, y, z, variant, guards=guards)
                if not verdict:
                    record(f"6T{variant}", x, y, z, verdict.as_dict())
            checked += 1
            if not symbolic_cancellation(host, x, y, z):
                record("cancellation", x, y, z)
        elif kind == "dcv":
            checked += 1
            verdict = check_delcont_var(host, x, y, z, guards=guards)
            if not verdict:
                record("dcv", x, y, z, verdict.as_dict())
        else:
            raise ValueError(f"unknown relation kind {kind!r}")
    return checked, failures


def _multiplicativity_task(task) -> Outcome:
    g1, partners, guards = task
    failures = []
    for g2 in partners:
        verdict = check_multiplicativity(g1, g2, guards=guards)
        if not verdict:
            failures.append({"check": "multiplicativity", "graph6": [to_graph6(g1), to_graph6(g2)],
                             **verdict.as_dict()})
    return len(partners), failures


def _leaf_task(task) -> Outcome:
    graph, guards = task
    failures = []
    leaves = graph.leaves()
    for leaf in leaves:
        verdict = check_leaf_deletion(graph, leaf, guards=guards)
        if not verdict:
            failures.append({"check": "leaf_deletion", "graph6": to_graph6(graph), "leaf": leaf,
                             **verdict.as_dict()})
    return len(leaves), failures


def _bound_task(task) -> Outcome:
    graph, guards = task
    report = check_bound(graph, guards)
    discrete = is_discrete(graph)
    if report.ok and report.tight == discrete:
        return 1, []
    return 1, [{
        "graph6": to_graph6(graph),
        "n": graph.n,
        "phi": str(report.value),
        "bound": str(report.bound),
        "nonzero": report.nonzero,
        "within_bound": report.within_bound,
        "tight": report.tight,
        "discrete": discrete,
    }]


def _bridge_task(task) -> Outcome:
    diagram, guards = task
    failures = []
    checked = 1
    word = diagram.to_word()
    w = w_at_c38(diagram, guards=guards)
    phi = phi_eulerian(intersection_graph(diagram), guards)
    if w != phi:
        failures.append({"check": "bridge", "word": word, "w": str(w), "phi": str(phi)})
    for leaf in diagram.leaves():
        checked += 1
        expected = MINUS_ONE_EIGHTH * w_at_c38(diagram.delete_chord(leaf), guards=guards)
        if w != expected:
            failures.append({"check": "diagram_leaf", "word": word, "chord": leaf,
                             "w": str(w), "expected": str(expected)})
    for chord, endpoint, terms in generate_all_4t(diagram):
        checked += 2
        w_sum = ZERO
        phi_sum = ZERO
        for sign, term in terms:
            w_sum = w_sum + sign * w_at_c38(term, guards=guards)
            phi_sum = phi_sum + sign * phi_eulerian(intersection_graph(term), guards)
        if w_sum:
            failures.append({"check": "chord_4t_w", "word": word, "chord": chord,
                             "endpoint": endpoint, "sum": str(w_sum)})
        if phi_sum:
            failures.append({"check": "chord_4t_phi", "word": word, "chord": chord,
                             "endpoint": endpoint, "sum": str(phi_sum)})
    return checked, failures


def _product_task(task) -> Outcome:
    d1, d2, guards = task
    expected = w_at_c38(d1, guards=guards) * w_at_c38(d2, guards=guards)
    failures = []
    checked = 0
    for b1, b2 in cartesian(range(max(1, len(d1.pairing))), range(max(1, len(d2.pairing)))):
        checked += 1
        value = w_at_c38(product_at(d1, d2, b1, b2), guards=guards)
        if value != expected:
            failures.append({"check": "product", "words": [d1.to_word(), d2.to_word()],
                             "breaks": [b1, b2], "w": str(value), "expected": str(expected)})
    return checked, failures


def _conjecture_task(task) -> Outcome:
    graph, pairs, guards = task
    failures = []
    phi = phi_eulerian(graph, guards)
    value = psi(graph, guards)
    if phi != value:
        failures.append({"kind": "phi_psi", "graph6": to_graph6(graph), "n": graph.n,
                         "phi": str(phi), "psi": str(value)})
    for u, v in pairs:
        verdict = check_4t(graph, u, v, evaluator=psi, guards=guards)
        if not verdict:
            failures.append({"kind": "psi_4t", "graph6": to_graph6(graph), "pair": [u, v],
                             **verdict.as_dict()})
    return 1, failures


def _ordered_pairs(n: int) -> List[Tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


# ----------------------------------------------------------------------
# Graph suites
# ----------------------------------------------------------------------
def run_delcont(ctx: SweepContext) -> SuiteReport:
    graphs = ctx.graph_list(ctx.sweeps.delcont_max_n)
    report = SuiteReport("delcont", details={"graphs": len(graphs)})
    return _collect(report, ctx.map(_delcont_task, [(g, ctx.guards) for g in graphs], "delcont"))


def run_agreement(ctx: SweepContext) -> SuiteReport:
    """All four phi evaluators up to agreement_max_n, eulerian vs delcont above."""
    all_upto = ctx.sweeps.agreement_max_n
    pair_upto = ctx.sweeps.agreement_pair_max_n if ctx.max_n is None else ctx.max_n
    if ctx.max_n is not None:
        all_upto = min(all_upto, ctx.max_n)
    graphs = ctx.graph_list(pair_upto)
    tasks = [
        (g, PHI_EVALUATORS if g.n <= all_upto else ("eulerian", "delcont"), ctx.guards)
        for g in graphs
    ]
    report = SuiteReport("evaluators", details={
        "all_four_up_to_n": all_upto,
        "graphs": len(graphs),
    })
    return _collect(report, ctx.map(_agreement_task, tasks, "evaluators"))


def run_four_t(ctx: SweepContext) -> SuiteReport:
    graphs = ctx.graph_list(ctx.sweeps.fourt_exhaustive_max_n)
    tasks = [(g, _ordered_pairs(g.n), phi_eulerian, ctx.guards) for g in graphs]
    samples = ctx.sample_count(ctx.sweeps.fourt_samples)
    sample_n = ctx.sweeps.fourt_sample_n
    rng = ctx.rng("fourT")
    logger.info("fourT: %d exhaustive graphs, %d samples at n=%d, seed %d",
                len(graphs), samples, sample_n, ctx.effective_seed)
    for _ in range(samples if sample_n >= 2 else 0):
        graph = random_graph(sample_n, 0.5, rng)
        u, v = rng.sample(range(sample_n), 2)
        tasks.append((graph, [(u, v)], phi_eulerian, ctx.guards))
    report = SuiteReport("fourT", details={
        "exhaustive_graphs": len(graphs),
        "samples": samples,
        "sample_n": sample_n,
    })
    return _collect(report, ctx.map(_four_t_task, tasks, "fourT"))


def _relation_tasks(ctx: SweepContext, kind: str, default_host_n: int) -> Tuple[List, Dict]:
    host_max = default_host_n if ctx.host_n is None else ctx.host_n
    tasks = []
    hosts = 0
    for host in enumerate_up_to(host_max, max_vertices=ctx.guards.enumeration_max_vertices):
        hosts += 1
        subsets = range(1 << host.n)
        for x in subsets:
            tasks.append((kind, host, [(x, y, z) for y in subsets for z in subsets], ctx.guards))
    details = {"host_max_n": host_max, "hosts": hosts}
    if kind != "dcv":
        sample_n = ctx.sweeps.relation_sample_host_n
        samples = ctx.sample_count(ctx.sweeps.relation_samples) if sample_n > host_max else 0
        if samples:
            rng = ctx.rng(kind)
            pool = list(enumerate_graphs(sample_n, ctx.guards.enumeration_max_vertices))
            for _ in range(samples):
                host = rng.choice(pool)
                triple = (rng.getrandbits(sample_n), rng.getrandbits(sample_n), rng.getrandbits(sample_n))
                tasks.append((kind, host, [triple], ctx.guards))
        details.update({"samples": samples, "sample_host_n": sample_n})
    return tasks, details


def run_triangle(ctx: SweepContext) -> SuiteReport:
    tasks, details = _relation_tasks(ctx, "triangle", ctx.sweeps.relation_host_max_n)
    return _collect(SuiteReport("triangle", details=details),
                    ctx.map(_relation_task, tasks, "triangle"))


def run_six_t(ctx: SweepContext) -> SuiteReport:
    tasks, details = _relation_tasks(ctx, "sixT", ctx.sweeps.relation_host_max_n)
    return _collect(SuiteReport("sixT", details=details), ctx.map(_relation_task, tasks, "sixT"))


def run_delcont_var(ctx: SweepContext) -> SuiteReport:
    tasks, details = _relation_tasks(ctx, "dcv", ctx.sweeps.dcv_host_max_n)
    return _collect(SuiteReport("dcv", details=details), ctx.map(_relation_task, tasks, "dcv"))


def check_cv_axioms(ctx: SweepContext) -> SuiteReport:
    """Normalization, multiplicativity, leaf deletion and both 6T relations at 3/8."""
    max_n = ctx.sweeps.cv_max_n if ctx.max_n is None else ctx.max_n
    report = SuiteReport("cv")

    normal = SuiteReport("cv")
    n1 = empty(1)
    for name in PHI_EVALUATORS:
        value = EVALUATORS[name](n1, guards=ctx.guards)
        normal.add(1, [] if value == THREE_EIGHTHS else
                   [{"check": "normalization", "evaluator": name, "phi": str(value)}])
    report.merge(normal)

    by_size: Dict[int, List[Graph]] = {}
    for graph in ctx.graph_list(max_n):
        by_size.setdefault(graph.n, []).append(graph)
    tasks = []
    for a in range(1, max_n):
        for b in range(a, max_n - a + 1):
            left, right = by_size.get(a, []), by_size.get(b, [])
            for i, g1 in enumerate(left):
                partners = right[i:] if a == b else right
                if partners:
                    tasks.append((g1, partners, ctx.guards))
    mult = _collect(SuiteReport("cv"), ctx.map(_multiplicativity_task, tasks, "multiplicativity"))
    report.merge(mult)

    leafed = [g for size in sorted(by_size) for g in by_size[size] if g.leaves()]
    leaf = _collect(SuiteReport("cv"), ctx.map(_leaf_task, [(g, ctx.guards) for g in leafed],
                                                 "leaf deletion"))
    report.merge(leaf)

    six_t = run_six_t(replace(ctx, samples=0))
    report.merge(six_t)

    report.details = {
        "max_n": max_n,
        "normalization": normal.instances_checked,
        "multiplicativity": mult.instances_checked,
        "leaf_deletion": leaf.instances_checked,
        "leafed_graphs": len(leafed),
        "six_t": six_t.instances_checked,
        "leaf_factor": str(THREE_EIGHTHS - ONE_HALF),
    }
    return report


def run_bound(ctx: SweepContext) -> SuiteReport:
    graphs = ctx.graph_list(ctx.sweeps.bound_max_n)
    report = SuiteReport("bound", details={"graphs": len(graphs)})
    _collect(report, ctx.map(_bound_task, [(g, ctx.guards) for g in graphs], "bound"))
    report.details["tight"] = sum(1 for g in graphs if is_discrete(g))
    return report


# ----------------------------------------------------------------------
# Chord diagrams
# ----------------------------------------------------------------------
def bridge_scan(ctx: SweepContext) -> SuiteReport:
    """phi of the intersection graph equals the weight system, plus chord-side checks.

    Also covered: chord 4T for both sides, the -1/8 factor of every leaf chord,
    break-point independence and multiplicativity of the product, and that
    diagrams sharing an intersection graph share their weight.
    """
    max_chords = ctx.sweeps.bridge_max_chords if ctx.max_chords is None else ctx.max_chords
    diagrams = [d for n in range(1, max_chords + 1) for d in enumerate_diagrams(n, ctx.guards)]
    report = SuiteReport("bridge")
    report.add(1, [] if REP2.casimir_check() else [{"check": "casimir"}])
    report.add(1, [] if w_at_c38(ChordDiagram.empty(), guards=ctx.guards) == 1 else
               [{"check": "empty_diagram"}])

    _collect(report, ctx.map(_bridge_task, [(d, ctx.guards) for d in diagrams], "bridge"))

    products = [
        (d1, d2, ctx.guards)
        for d1 in diagrams for d2 in diagrams
        if d1.order + d2.order <= max_chords and d1.order <= d2.order
    ]
    _collect(report, ctx.map(_product_task, products, "products"))

    by_graph: Dict[str, set] = {}
    for diagram in diagrams:
        key = f"{diagram.order}:{canonical_key(intersection_graph(diagram))}"
        by_graph.setdefault(key, set()).add(w_at_c38(diagram, guards=ctx.guards))
    for key, values in sorted(by_graph.items()):
        report.add(1, [] if len(values) == 1 else
                   [{"check": "same_intersection_graph", "graph": key,
                     "values": sorted(str(v) for v in values)}])

    report.details = {
        "max_chords": max_chords,
        "diagrams": len(diagrams),
        "diagram_products": len(products),
        "diagram_leaf_checks": sum(len(d.leaves()) for d in diagrams),
        "intersection_graph_classes": len(by_graph),
    }
    return report


# ----------------------------------------------------------------------
# phi = psi
# ----------------------------------------------------------------------
def conjecture_scan(ctx: SweepContext) -> SuiteReport:
    """phi vs psi on every class, plus 4T of psi on small classes; report-only."""
    graphs = ctx.graph_list(ctx.sweeps.conjecture_max_n)
    fourt_upto = ctx.sweeps.psi_fourt_max_n
    tasks = [(g, _ordered_pairs(g.n) if g.n <= fourt_upto else [], ctx.guards) for g in graphs]
    report = SuiteReport("conjecture", asserted=False)
    outcomes = ctx.map(_conjecture_task, tasks, "conjecture")
    _collect(report, outcomes)
    discrepancies = _discrepancies(outcomes)
    report.details = {
        "graphs": len(graphs),
        "by_n": _count_by_n(graphs),
        "psi_4t_up_to_n": fourt_upto,
        "discrepancies": discrepancies,
        "discrepancy_count": len(discrepancies),
    }
    if report.failure_count:
        logger.warning("conjecture scan: %d findings (first: %s)",
                       report.failure_count, report.failures[0])
    return report


def _count_by_n(graphs: Sequence[Graph]) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for graph in graphs:
        counts[str(graph.n)] = counts.get(str(graph.n), 0) + 1
    return counts


# ----------------------------------------------------------------------
# Registry
# ----------------------------------------------------------------------
SUITES: Dict[str, Callable[[SweepContext], SuiteReport]] = {
    "delcont": run_delcont,
    "evaluators": run_agreement,
    "fourT": run_four_t,
    "triangle": run_triangle,
    "sixT": run_six_t,
    "dcv": run_delcont_var,
    "cv": check_cv_axioms,
    "bound": run_bound,
    "bridge": bridge_scan,
    "conjecture": conjecture_scan,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, ctx: SweepContext) -> SuiteReport:
    try:
        runner = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    logger.info("suite %s: seed %d, workers %d", name, ctx.effective_seed, ctx.workers)
    start = time.perf_counter()
    report = runner(ctx)
    report.wall_time = time.perf_counter() - start
    logger.info("suite %s: %d checked, %d failures", name, report.instances_checked,
                report.failure_count)
    return report


def run_suites(name: str, ctx: SweepContext) -> List[SuiteReport]:
    names = list(SUITES) if name == "all" else [name]
    return [run_suite(n, ctx) for n in names]
