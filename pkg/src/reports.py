"""Verification reports, record writers and timing statistics."""
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import numpy as np

from src import __version__
from src.dyadic import Dyadic

MAX_RECORDED_FAILURES = 25


def to_plain(obj: Any) -> Any:
    """Reduce report values to JSON types: Dyadic -> "m/2^k", numpy -> int/float/list."""
    if isinstance(obj, Dyadic):
        return str(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [to_plain(item) for item in obj.tolist()]
    if isinstance(obj, dict):
        return {str(key): to_plain(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(item) for item in obj]
    return obj


def summarize_timings(samples: Sequence[float]) -> Dict[str, float]:
    """Median / p95 / min / max / mean of wall times in seconds."""
    if not len(samples):
        return {}
    values = np.asarray(samples, dtype=float)
    return to_plain({
        "median": np.median(values),
        "p95": np.percentile(values, 95),
        "min": np.min(values),
        "max": np.max(values),
        "mean": np.mean(values),
    })


@dataclass
class SuiteReport:
    """Outcome of one verification suite.

    Only the first MAX_RECORDED_FAILURES failure records are kept;
    failure_count always holds the full number.
    """
    suite: str
    asserted: bool = True
    instances_checked: int = 0
    failure_count: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    wall_time: Optional[float] = None

    def add(self, checked: int, failures: Iterable[Dict[str, Any]]) -> None:
        self.instances_checked += checked
        for failure in failures:
            self.failure_count += 1
            if len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append(failure)

    def merge(self, other: "SuiteReport") -> None:
        self.add(other.instances_checked, other.failures)
        # failures dropped by other's cap still count
        self.failure_count += other.failure_count - len(other.failures)
        for key, value in other.details.items():
            if isinstance(value, int) and isinstance(self.details.get(key), int):
                self.details[key] += value
            else:
                self.details.setdefault(key, value)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    @property
    def ok(self) -> bool:
        """Report-only suites never fail a run."""
        return self.passed or not self.asserted

    def as_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        out = {
            "suite": self.suite,
            "asserted": self.asserted,
            "instances_checked": self.instances_checked,
            "failure_count": self.failure_count,
            "failures": self.failures,
            "details": self.details,
            "passed": self.passed,
        }
        if include_timings and self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 6)
        return to_plain(out)


@dataclass
class VerificationReport:
    """Everything one `verify` or `scan-conjecture` run produced."""
    config: Dict[str, Any]
    seed: int
    suites: List[SuiteReport] = field(default_factory=list)
    include_timings: bool = False

    @property
    def ok(self) -> bool:
        return all(suite.ok for suite in self.suites)

    def totals(self) -> Dict[str, int]:
        return {
            "suites": len(self.suites),
            "instances_checked": sum(s.instances_checked for s in self.suites),
            "failures": sum(s.failure_count for s in self.suites),
            "asserted_failures": sum(s.failure_count for s in self.suites if s.asserted),
        }

    def as_dict(self) -> Dict[str, Any]:
        out = {
            "tool": "phi-engine",
            "version": __version__,
            "config": self.config,
            "seed": self.seed,
            "suites": [s.as_dict(self.include_timings) for s in self.suites],
            "totals": self.totals(),
            "ok": self.ok,
        }
        if self.include_timings:
            out["run_timestamp"] = datetime.now(timezone.utc).isoformat()
        return out

    def summary_rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "suite": s.suite,
                "asserted": s.asserted,
                "instances_checked": s.instances_checked,
                "failures": s.failure_count,
                "passed": s.passed,
            }
            for s in self.suites
        ]


class ReportWriter:
    """Writes reports and record lists as json, csv or text."""

    def __init__(self, output_format: str = "json", out_dir: Optional[str] = None):
        if output_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {output_format!r}")
        self.output_format = output_format
        self.out_dir = Path(out_dir) if out_dir else None
        if self.out_dir:
            self.out_dir.mkdir(parents=True, exist_ok=True)

    # ------------------------------------------------------------------
    # Plain serializers
    # ------------------------------------------------------------------
    @staticmethod
    def to_json(payload: Any) -> str:
        return json.dumps(to_plain(payload), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def to_csv(rows: Sequence[Dict[str, Any]], fieldnames: Optional[List[str]] = None) -> str:
        buffer = io.StringIO()
        if fieldnames is None:
            fieldnames = []
            for row in rows:
                fieldnames.extend(k for k in row if k not in fieldnames)
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n",
                                extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _flat(row.get(k)) for k in fieldnames})
        return buffer.getvalue()

    @staticmethod
    def to_text(rows: Sequence[Dict[str, Any]], title: Optional[str] = None) -> str:
        lines = []
        if title:
            lines += ["=" * 60, title, "=" * 60]
        for row in rows:
            lines.append("  ".join(f"{k}={_flat(v)}" for k, v in row.items()))
        return "\n".join(lines) + "\n"

    # ------------------------------------------------------------------
    # Output
    # ------------------------------------------------------------------
    def write_records(self, rows: Sequence[Dict[str, Any]], stream: Optional[TextIO] = None,
                      name: str = "records", title: Optional[str] = None) -> Optional[Path]:
        """Per-graph or per-diagram records in the configured format."""
        if self.output_format == "json":
            text = self.to_json(list(rows))
            suffix = "json"
        elif self.output_format == "csv":
            text = self.to_csv(rows)
            suffix = "csv"
        else:
            text = self.to_text(rows, title)
            suffix = "txt"
        return self._emit(text, stream, f"{name}.{suffix}")

    def write_report(self, report: VerificationReport, stream: Optional[TextIO] = None) -> Optional[Path]:
        """report.json plus summary.csv under --out, or the chosen format on stream."""
        if self.out_dir:
            self._emit(self.to_csv(report.summary_rows()), stream, "summary.csv")
            return self._emit(self.to_json(report.as_dict()), stream, "report.json")
        if self.output_format == "csv":
            return self._emit(self.to_csv(report.summary_rows()), stream, "")
        if self.output_format == "text":
            return self._emit(render_summary(report), stream, "")
        return self._emit(self.to_json(report.as_dict()), stream, "")

    def _emit(self, text: str, stream: Optional[TextIO], filename: str) -> Optional[Path]:
        stream = stream or sys.stdout
        if self.out_dir and filename:
            path = self.out_dir / filename
            with open(path, "w", newline="", encoding="utf-8") as f:
                f.write(text)
            return path
        stream.write(text)
        stream.flush()
        return None


def render_summary(report: VerificationReport) -> str:
    """Human-readable banner summary of a verification run."""
    lines = ["=" * 60, "VERIFICATION SUMMARY", "=" * 60, f"Seed: {report.seed}"]
    for suite in report.suites:
        status = "PASS" if suite.passed else ("FAIL" if suite.asserted else "FINDINGS")
        tag = "" if suite.asserted else " (report-only)"
        lines.append(f"  {suite.suite:<12} {status:<9} {suite.instances_checked:>8} checked, "
                     f"{suite.failure_count} failures{tag}")
        for failure in suite.failures[:3]:
            lines.append(f"      {failure}")
    totals = report.totals()
    lines += [
        "=" * 60,
        f"Total instances: {totals['instances_checked']}  "
        f"failures: {totals['failures']}  (asserted: {totals['asserted_failures']})",
        "=" * 60,
    ]
    return "\n".join(lines) + "\n"


def _flat(value: Any) -> Any:
    if isinstance(value, (dict, list)):
        return json.dumps(to_plain(value), sort_keys=True)
    return value
