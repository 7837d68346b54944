"""Main entry point for the phi invariant engine."""
import argparse
import logging
import sys
from typing import List, Optional

from src.batch_evaluator import BatchEvaluator, is_error
from src.bench import Bench
from src.config import (
    PHI_EVALUATOR_NAMES,
    Config,
    RunConfig,
    apply_guard_overrides,
    load_config,
    resolve_threads,
)
from src.errors import ConfigError, PhiError
from src.graph6 import read_graph6_stream
from src.reports import ReportWriter, VerificationReport, render_summary
from src.sweeps import SUITE_NAMES, SweepContext, run_suites

logger = logging.getLogger("phi")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def setup_logging(verbose: bool, quiet: bool) -> None:
    level = logging.INFO if verbose else (logging.ERROR if quiet else logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)


def build_run_config(args, config: Config, guards) -> RunConfig:
    return RunConfig(
        subcommand=args.command,
        max_n=getattr(args, "max_n", None),
        evaluator=getattr(args, "evaluator", None) or config.default_evaluator,
        samples=getattr(args, "samples", None),
        seed=args.seed if getattr(args, "seed", None) is not None else config.sweeps.seed,
        output_format=args.fmt or config.reports.output_format,
        threads=resolve_threads(args.threads, config),
        guards=guards,
        include_timings=bool(getattr(args, "timings", False)) or config.reports.include_timings,
        suite=getattr(args, "suite", None),
        host_n=getattr(args, "host_n", None),
        max_chords=getattr(args, "max_chords", None),
    )


def _banner(title: str, lines: List[str], stream) -> None:
    print(f"\n{'='*60}", file=stream)
    print(title, file=stream)
    print(f"{'='*60}", file=stream)
    for line in lines:
        print(line, file=stream)
    print(f"{'='*60}\n", file=stream)


def _progress_enabled(args) -> bool:
    return not args.quiet and (args.verbose or sys.stderr.isatty())


def _load_graphs(path: Optional[str]):
    if not path:
        return None
    with open(path, "r", encoding="utf-8") as f:
        return list(read_graph6_stream(f))


def cmd_eval(args, config: Config, run: RunConfig) -> int:
    """Evaluate phi (and psi) on every graph6 line of the input."""
    evaluator = BatchEvaluator(run.evaluator, run.guards, workers=run.threads,
                               verbose=_progress_enabled(args))
    records = evaluator.process_file(args.input)
    writer = ReportWriter(run.output_format, args.out)
    path = writer.write_records(records, name="eval", title="PHI VALUES")
    errors = sum(1 for r in records if is_error(r))
    disagree = sum(1 for r in records if not is_error(r) and not r["agree"])
    if path or args.verbose:
        _banner("EVALUATION COMPLETE", [
            f"Graphs evaluated: {len(records) - errors}",
            f"Input errors: {errors}",
            f"Evaluator disagreements: {disagree}",
        ] + ([f"Records saved to: {path}"] if path else []), sys.stderr)
    if errors:
        return EXIT_INPUT
    return EXIT_FAILED if disagree else EXIT_OK


def cmd_verify(args, config: Config, run: RunConfig, suite: Optional[str] = None) -> int:
    """Run one verification suite (or all) and write the report."""
    suite = suite or args.suite
    ctx = SweepContext(
        sweeps=config.sweeps,
        guards=run.guards,
        max_n=run.max_n,
        host_n=run.host_n,
        max_chords=run.max_chords,
        samples=run.samples,
        seed=run.seed,
        workers=run.threads,
        verbose=_progress_enabled(args),
        graphs=_load_graphs(getattr(args, "graphs", None)),
    )
    report = VerificationReport(config=run.as_dict(), seed=run.seed,
                                suites=run_suites(suite, ctx),
                                include_timings=run.include_timings)
    writer = ReportWriter(run.output_format, args.out)
    path = writer.write_report(report)
    if path or args.verbose:
        print(render_summary(report), file=sys.stderr)
        if path:
            print(f"Report saved to: {path}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_scan_conjecture(args, config: Config, run: RunConfig) -> int:
    """phi = psi scan; findings are reported, never a failing exit code."""
    cmd_verify(args, config, run, suite="conjecture")
    return EXIT_OK


def cmd_chords(args, config: Config, run: RunConfig) -> int:
    evaluator = BatchEvaluator(guards=run.guards, workers=run.threads,
                               verbose=_progress_enabled(args))
    if args.action == "enumerate":
        if args.chords is None:
            raise ConfigError("chords enumerate needs --chords N")
        records = evaluator.enumerate_chords(args.chords)
    else:
        if not args.word:
            raise ConfigError("chords eval needs at least one --word")
        records = evaluator.evaluate_words(args.word)
    writer = ReportWriter(run.output_format, args.out)
    writer.write_records(records, name=f"chords_{args.action}", title="CHORD DIAGRAMS")
    if any(is_error(r) for r in records):
        return EXIT_INPUT
    return EXIT_OK if all(r["agree"] for r in records) else EXIT_FAILED


def cmd_bench(args, config: Config, run: RunConfig) -> int:
    bench = Bench(config.bench, run.guards, run.seed, verbose=_progress_enabled(args))
    result = bench.run(args.max_n)
    writer = ReportWriter(run.output_format, args.out)
    if run.output_format == "json":
        writer.write_records([{
            "config": run.as_dict(),
            "rows": result.rows,
            "refusals": result.refusals,
            "disagreements": result.disagreements,
            "instances": result.instances,
            "agree": result.agree,
        }], name="bench")
    else:
        writer.write_records(result.rows, name="bench", title="BENCHMARK (seconds)")
    if not args.quiet:
        _banner("BENCHMARK COMPLETE", [
            f"Instances: {result.instances}",
            f"Refusals (size guards): {len(result.refusals)}",
            f"Disagreements: {len(result.disagreements)}",
        ], sys.stderr)
    return EXIT_OK if result.agree else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="Path to config file (default: config.yaml)")
    common.add_argument("-v", "--verbose", action="store_true", help="Info logging and progress bars")
    common.add_argument("-q", "--quiet", action="store_true", help="Errors only")
    common.add_argument("--threads", type=int, help="Worker processes (default: $PHI_THREADS or config)")
    common.add_argument("--fmt", choices=["json", "csv", "text"], help="Output format")
    common.add_argument("--out", help="Write output files into this directory instead of stdout")
    common.add_argument("--guard", action="append", metavar="KEY=VALUE",
                        help="Override a size guard, e.g. direct_max_edges=24")

    parser = argparse.ArgumentParser(description="Exact evaluation and verification of the graph invariant phi")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="Evaluate phi and psi on graph6 input")
    p_eval.add_argument("input", nargs="?", default="-", help="graph6 file, one graph per line ('-' = stdin)")
    p_eval.add_argument("--evaluator", choices=list(PHI_EVALUATOR_NAMES))

    p_verify = sub.add_parser("verify", parents=[common], help="Run a verification suite")
    p_verify.add_argument("suite", choices=list(SUITE_NAMES))
    p_verify.add_argument("--max-n", type=int, help="Largest graph size for graph suites")
    p_verify.add_argument("--host-n", type=int, help="Largest host size for triangle/sixT/dcv")
    p_verify.add_argument("--max-chords", type=int, help="Largest diagram order for the bridge suite")
    p_verify.add_argument("--samples", type=int, help="Random samples per sampled suite")
    p_verify.add_argument("--seed", type=int, help="RNG seed (default from config)")
    p_verify.add_argument("--graphs", help="graph6 file replacing built-in enumeration")
    p_verify.add_argument("--timings", action="store_true", help="Include wall times in the report")

    p_chords = sub.add_parser("chords", parents=[common], help="Chord diagrams and the weight system")
    p_chords.add_argument("action", choices=["enumerate", "eval"])
    p_chords.add_argument("--chords", type=int, help="Number of chords to enumerate")
    p_chords.add_argument("--word", action="append", help="Double-occurrence word, e.g. abab")

    p_bench = sub.add_parser("bench", parents=[common], help="Time the phi evaluators")
    p_bench.add_argument("--max-n", type=int, help="Largest random graph size")
    p_bench.add_argument("--seed", type=int)

    p_scan = sub.add_parser("scan-conjecture", parents=[common], help="Scan for graphs with phi != psi")
    p_scan.add_argument("--max-n", type=int, help="Largest graph size")
    p_scan.add_argument("--seed", type=int)
    p_scan.add_argument("--graphs", help="graph6 file replacing built-in enumeration")
    p_scan.add_argument("--timings", action="store_true")
    return parser


COMMANDS = {
    "eval": cmd_eval,
    "verify": cmd_verify,
    "chords": cmd_chords,
    "bench": cmd_bench,
    "scan-conjecture": cmd_scan_conjecture,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose, args.quiet)

    try:
        config = load_config(args.config) if args.config else load_config()
        guards = apply_guard_overrides(config.guards, args.guard)
        run = build_run_config(args, config, guards)
        logger.info("%s: seed %d, threads %d", run.subcommand, run.seed, run.threads)
        return COMMANDS[args.command](args, config, run)
    except (PhiError, FileNotFoundError, ValueError) as exc:
        # bad input, unknown suite, size guard refusals, config problems
        logger.error("%s", exc)
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        logger.exception("internal error")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
