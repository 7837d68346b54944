import pytest

from src.chords import enumerate_diagrams
from src.config import GuardsConfig, SweepConfig
from src.graph import complete, path
from src.reports import MAX_RECORDED_FAILURES, SuiteReport
from src.sweeps import (
    SUITE_NAMES,
    SUITES,
    SweepContext,
    _collect,
    _discrepancies,
    bridge_scan,
    check_cv_axioms,
    conjecture_scan,
    run_agreement,
    run_bound,
    run_delcont,
    run_delcont_var,
    run_four_t,
    run_six_t,
    run_suite,
    run_suites,
    run_triangle,
)


@pytest.fixture
def ctx():
    """Small bounds so every suite runs in well under a second or two."""
    return SweepContext(max_n=4, host_n=1, max_chords=3, samples=5, seed=1)


class TestGraphSuites:
    def test_delcont(self, ctx):
        report = run_delcont(ctx)
        assert report.passed
        assert report.details["graphs"] == 1 + 1 + 2 + 4 + 11
        assert report.instances_checked > 0

    def test_agreement(self, ctx):
        report = run_agreement(ctx)
        assert report.passed
        assert report.suite == "evaluators"
        assert report.details["all_four_up_to_n"] == 4

    def test_four_t(self, ctx):
        report = run_four_t(ctx)
        assert report.passed
        assert report.details["samples"] == 5

    def test_bound(self, ctx):
        report = run_bound(ctx)
        assert report.passed
        # one discrete graph per size 0..4
        assert report.details["tight"] == 5

    def test_cv_axioms(self, ctx):
        report = check_cv_axioms(ctx)
        assert report.passed
        assert report.details["normalization"] == 4
        assert report.details["leaf_factor"] == "-1/2^3"
        assert report.details["six_t"] > 0


class TestRelationSuites:
    @pytest.mark.parametrize("runner", [run_triangle, run_six_t, run_delcont_var])
    def test_small_hosts(self, ctx, runner):
        report = runner(ctx)
        assert report.passed
        assert report.details["host_max_n"] == 1

    def test_dcv_is_exhaustive_only(self, ctx):
        assert "samples" not in run_delcont_var(ctx).details

    def test_triangle_counts(self):
        # hosts on 0 and 1 vertices: 1 + 8 attachment triples
        ctx = SweepContext(host_n=1, samples=0)
        report = run_triangle(ctx)
        assert report.instances_checked == 9


class TestChordAndConjectureSuites:
    def test_bridge(self, ctx):
        report = bridge_scan(ctx)
        assert report.passed
        assert report.details["diagrams"] == 1 + 2 + 5

    def test_conjecture_is_report_only(self, ctx):
        report = conjecture_scan(ctx)
        assert not report.asserted
        assert report.ok
        assert report.details["by_n"]["4"] == 11

    def test_bridge_checks_leaf_chords(self, ctx):
        report = bridge_scan(ctx)
        leaves = sum(len(d.leaves()) for n in (1, 2, 3) for d in enumerate_diagrams(n))
        assert leaves > 0
        assert report.details["diagram_leaf_checks"] == leaves
        assert not [f for f in report.failures if f.get("check") == "diagram_leaf"]

    def test_conjecture_lists_discrepancies(self, ctx):
        report = conjecture_scan(ctx)
        assert report.details["discrepancies"] == []
        assert report.details["discrepancy_count"] == 0

    def test_discrepancies_survive_the_record_cap(self):
        count = MAX_RECORDED_FAILURES + 15
        outcomes = [(1, [{"kind": "psi_4t", "graph6": f"A{i}", "pair": [0, 1]}])
                    for i in range(MAX_RECORDED_FAILURES)]
        outcomes += [(1, [{"kind": "phi_psi", "graph6": f"B{i}", "n": 2,
                           "phi": "0", "psi": "1"}]) for i in range(count)]
        report = _collect(SuiteReport("conjecture", asserted=False), outcomes)
        keys = _discrepancies(outcomes)
        assert len(report.failures) == MAX_RECORDED_FAILURES
        assert report.failure_count == MAX_RECORDED_FAILURES + count
        assert keys == [f"B{i}" for i in range(count)]


class TestRunner:
    def test_registry(self):
        assert SUITE_NAMES[-1] == "all"
        assert set(SUITES) == set(SUITE_NAMES) - {"all"}

    def test_unknown_suite(self, ctx):
        with pytest.raises(ValueError):
            run_suite("nope", ctx)

    def test_wall_time_recorded(self, ctx):
        report = run_suite("bound", ctx)
        assert report.wall_time is not None
        assert "wall_time" not in report.as_dict()
        assert "wall_time" in report.as_dict(include_timings=True)

    def test_same_seed_same_report(self, ctx):
        first = [r.as_dict() for r in run_suites("fourT", ctx)]
        second = [r.as_dict() for r in run_suites("fourT", ctx)]
        assert first == second

    def test_worker_count_does_not_change_results(self, ctx):
        serial = run_four_t(ctx).as_dict()
        pooled = run_four_t(SweepContext(max_n=4, samples=5, seed=1, workers=2)).as_dict()
        assert serial == pooled

    def test_external_graphs(self):
        ctx = SweepContext(graphs=[complete(3), path(4)], max_n=3)
        report = run_delcont(ctx)
        assert report.details["graphs"] == 1
        assert report.instances_checked == 3

    def test_guards_pass_through(self):
        ctx = SweepContext(max_n=2, guards=GuardsConfig(enumeration_max_vertices=2),
                           sweeps=SweepConfig(seed=5))
        assert ctx.effective_seed == 5
        assert run_bound(ctx).passed

    @pytest.mark.slow
    def test_all_suites_at_default_bounds(self):
        reports = run_suites("all", SweepContext(samples=50))
        assert all(report.ok for report in reports)
