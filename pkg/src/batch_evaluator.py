"""Batch evaluation of graph6 inputs and chord diagrams into report records."""
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

from src.chords import ChordDiagram, enumerate_diagrams, intersection_graph, w_at_c38
from src.config import GuardsConfig
from src.errors import Graph6FormatError, InvalidChordError, SizeGuardError
from src.graph import Graph
from src.graph6 import from_graph6, to_graph6
from src.invariants import EVALUATORS, PHI_EVALUATORS, phi_eulerian, psi
from src.parallel import parallel_map

logger = logging.getLogger(__name__)

Record = Dict[str, Any]


def graph_record(graph: Graph, evaluator: str, guards: GuardsConfig) -> Record:
    """Value by the chosen evaluator, psi, and agreement of every permitted phi evaluator."""
    value = EVALUATORS[evaluator](graph, guards=guards)
    values = {evaluator: value}
    for name in PHI_EVALUATORS:
        if name in values:
            continue
        try:
            values[name] = EVALUATORS[name](graph, guards=guards)
        except SizeGuardError as exc:
            logger.debug("agreement check skips %s: %s", name, exc)
    try:
        psi_exact = str(psi(graph, guards))
    except SizeGuardError:
        psi_exact = None
    phi_values = set(values.values())
    return {
        "graph6": to_graph6(graph),
        "n": graph.n,
        "edges": graph.edge_count,
        "phi_exact": str(value),
        "phi_decimal": value.to_decimal_string(),
        "psi_exact": psi_exact,
        "evaluator": evaluator,
        "evaluators_compared": sorted(values),
        "agree": len(phi_values) <= 1,
    }


def _eval_task(task: Tuple[int, str, str, GuardsConfig]) -> Record:
    line_no, text, evaluator, guards = task
    try:
        graph = from_graph6(text)
        return graph_record(graph, evaluator, guards)
    except Graph6FormatError as exc:
        return {"line": line_no, "input": text.strip(), "error": "format", "message": str(exc)}
    except SizeGuardError as exc:
        return {"line": line_no, "input": text.strip(), "error": "size_guard", **exc.as_dict()}


def diagram_record(diagram: ChordDiagram, guards: GuardsConfig) -> Record:
    graph = intersection_graph(diagram)
    w = w_at_c38(diagram, guards=guards)
    phi = phi_eulerian(graph, guards)
    return {
        "word": diagram.to_word(),
        "order": diagram.order,
        "graph6": to_graph6(graph),
        "w_exact": str(w),
        "phi_exact": str(phi),
        "agree": w == phi,
    }


def _diagram_task(task: Tuple[ChordDiagram, GuardsConfig]) -> Record:
    return diagram_record(*task)


def is_error(record: Record) -> bool:
    return "error" in record


class BatchEvaluator:
    """Evaluates graph6 lines or chord diagrams, one record each."""

    def __init__(self, evaluator: str = "eulerian", guards: Optional[GuardsConfig] = None,
                 workers: int = 1, verbose: bool = True):
        if evaluator not in PHI_EVALUATORS:
            raise ValueError(f"unknown evaluator {evaluator!r}; choose from {list(PHI_EVALUATORS)}")
        self.evaluator = evaluator
        self.guards = guards or GuardsConfig()
        self.workers = workers
        self.verbose = verbose

    def read_lines(self, source: str = "-") -> List[Tuple[int, str]]:
        """Numbered non-blank lines from a file or stdin ('-'); graph6 headers dropped."""
        if source == "-":
            lines = sys.stdin.read().splitlines()
        else:
            lines = Path(source).read_text(encoding="utf-8").splitlines()
        numbered = []
        for i, line in enumerate(lines, start=1):
            text = line.strip()
            if text.startswith(">>graph6<<"):
                text = text[len(">>graph6<<"):]
            if text:
                numbered.append((i, text))
        return numbered

    def process_lines(self, numbered: Iterable[Tuple[int, str]]) -> List[Record]:
        tasks = [(i, text, self.evaluator, self.guards) for i, text in numbered]
        records = parallel_map(_eval_task, tasks, workers=self.workers, desc="Evaluating",
                               verbose=self.verbose)
        self._log_summary(records)
        return records

    def process_file(self, source: str = "-") -> List[Record]:
        return self.process_lines(self.read_lines(source))

    def enumerate_chords(self, n: int) -> List[Record]:
        diagrams = list(enumerate_diagrams(n, self.guards))
        return parallel_map(_diagram_task, [(d, self.guards) for d in diagrams],
                            workers=self.workers, desc="Diagrams", verbose=self.verbose)

    def evaluate_words(self, words: Iterable[str]) -> List[Record]:
        records = []
        for word in words:
            try:
                records.append(diagram_record(ChordDiagram.from_word(word), self.guards))
            except InvalidChordError as exc:
                records.append({"input": word, "error": "chord", "message": str(exc)})
            except SizeGuardError as exc:
                records.append({"input": word, "error": "size_guard", **exc.as_dict()})
        return records

    def _log_summary(self, records: List[Record]) -> None:
        outcome = Counter(
            "error" if is_error(r) else ("agree" if r["agree"] else "disagree") for r in records
        )
        logger.info("evaluated %d inputs: %s", len(records), dict(sorted(outcome.items())))
        if outcome.get("disagree"):
            logger.error("%d graphs where phi evaluators disagree", outcome["disagree"])
