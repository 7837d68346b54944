"""Benchmark harness comparing the phi evaluators on seeded random graphs."""
import logging
import random
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from tqdm import tqdm

from src.canonical import random_graph
from src.config import BenchConfig, GuardsConfig
from src.dyadic import Dyadic
from src.errors import SizeGuardError
from src.graph import Graph
from src.graph6 import to_graph6
from src.invariants import EVALUATORS, PHI_EVALUATORS, EvalCache, phi_delcont
from src.reports import summarize_timings

logger = logging.getLogger(__name__)


@dataclass
class BenchResult:
    """Timing rows per (n, density, evaluator) plus the piggybacked agreement check."""
    rows: List[Dict[str, Any]] = field(default_factory=list)
    disagreements: List[Dict[str, Any]] = field(default_factory=list)
    refusals: List[Dict[str, Any]] = field(default_factory=list)
    instances: int = 0

    @property
    def agree(self) -> bool:
        return not self.disagreements


def _time_once(name: str, graph: Graph, guards: GuardsConfig) -> Tuple[float, Dyadic]:
    start = time.perf_counter()
    if name == "delcont":
        # a fresh cache so repeats measure the recursion, not lookups
        value = phi_delcont(graph, cache=EvalCache(), guards=guards)
    else:
        value = EVALUATORS[name](graph, guards=guards)
    return time.perf_counter() - start, value


class Bench:
    """Runs every evaluator on instances_per_bucket graphs per (size, density) bucket."""

    def __init__(self, bench: BenchConfig, guards: GuardsConfig, seed: int,
                 evaluators=PHI_EVALUATORS, verbose: bool = True):
        self.bench = bench
        self.guards = guards
        self.seed = seed
        self.evaluators = tuple(evaluators)
        self.verbose = verbose

    def sizes(self, max_n: Optional[int] = None) -> List[int]:
        """Configured sizes up to max_n; max_n itself is always benched when given."""
        sizes = sorted(n for n in self.bench.sizes if max_n is None or n <= max_n)
        if max_n is not None and max_n not in sizes:
            sizes.append(max_n)
        return sizes

    def run(self, max_n: Optional[int] = None) -> BenchResult:
        rng = random.Random(f"{self.seed}:bench")
        result = BenchResult()
        buckets = [(n, d) for n in self.sizes(max_n) for d in self.bench.densities]
        pbar = tqdm(total=len(buckets), desc="Benchmark", unit="bucket", ncols=100,
                    disable=not self.verbose)
        for n, density in buckets:
            graphs = [random_graph(n, density, rng) for _ in range(self.bench.instances_per_bucket)]
            result.instances += len(graphs)
            times: Dict[str, List[float]] = {name: [] for name in self.evaluators}
            refused: Dict[str, int] = {name: 0 for name in self.evaluators}
            for graph in graphs:
                values: Dict[str, Dyadic] = {}
                for name in self.evaluators:
                    try:
                        runs = [_time_once(name, graph, self.guards) for _ in range(self.bench.repeats)]
                    except SizeGuardError as exc:
                        refused[name] += 1
                        result.refusals.append({"n": n, "density": density,
                                                "graph6": to_graph6(graph), **exc.as_dict()})
                        continue
                    times[name].extend(t for t, _ in runs)
                    values[name] = runs[0][1]
                if len(set(values.values())) > 1:
                    result.disagreements.append({
                        "graph6": to_graph6(graph),
                        "values": {k: str(v) for k, v in values.items()},
                    })
            for name in self.evaluators:
                stats = summarize_timings(times[name])
                result.rows.append({
                    "n": n,
                    "density": density,
                    "evaluator": name,
                    "timed": len(times[name]) // max(1, self.bench.repeats),
                    "refused": refused[name],
                    **{f"{k}_s": v for k, v in stats.items()},
                })
            pbar.update(1)
            pbar.set_postfix({"n": n, "p": density})
        pbar.close()
        if result.disagreements:
            logger.error("evaluators disagree on %d benched graphs", len(result.disagreements))
        return result
