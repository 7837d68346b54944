import io
import json

import pytest

from main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, build_parser, main


@pytest.fixture(autouse=True)
def no_thread_env(monkeypatch):
    monkeypatch.delenv("PHI_THREADS", raising=False)


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / "graphs.g6"
    path.write_text("A_\nBw\n")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


class TestEval:
    def test_file(self, capsys, graph_file):
        code, out = run(capsys, "eval", graph_file, "-q")
        records = json.loads(out.out)
        assert code == EXIT_OK
        assert [r["phi_exact"] for r in records] == ["-3/2^6", "15/2^9"]
        assert all(r["agree"] for r in records)

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("@\n"))
        code, out = run(capsys, "eval", "-", "-q", "--evaluator", "delcont")
        assert code == EXIT_OK
        assert json.loads(out.out)[0]["phi_exact"] == "3/2^3"

    def test_malformed_line(self, capsys, tmp_path):
        path = tmp_path / "bad.g6"
        path.write_text("A_\nnot graph6\n")
        code, out = run(capsys, "eval", str(path), "-q")
        assert code == EXIT_INPUT
        assert json.loads(out.out)[1]["error"] == "format"

    def test_guard_override_refuses(self, capsys, graph_file):
        code, out = run(capsys, "eval", graph_file, "-q", "--guard", "eulerian_max_vertices=1")
        assert code == EXIT_INPUT
        assert json.loads(out.out)[0]["error"] == "size_guard"

    def test_bad_guard_key(self, capsys, graph_file):
        code, out = run(capsys, "eval", graph_file, "-q", "--guard", "bogus=1")
        assert code == EXIT_INPUT

    def test_missing_file(self, capsys, tmp_path):
        code, _ = run(capsys, "eval", str(tmp_path / "absent.g6"), "-q")
        assert code == EXIT_INPUT

    def test_csv(self, capsys, graph_file):
        code, out = run(capsys, "eval", graph_file, "-q", "--fmt", "csv")
        assert code == EXIT_OK
        assert out.out.splitlines()[0].startswith("graph6,n,edges,phi_exact")


class TestVerify:
    def test_bound_suite(self, capsys):
        code, out = run(capsys, "verify", "bound", "--max-n", "3", "-q")
        report = json.loads(out.out)
        assert code == EXIT_OK
        assert report["ok"]
        assert report["seed"] == 20240611
        assert report["config"]["suite"] == "bound"
        assert [s["suite"] for s in report["suites"]] == ["bound"]
        assert "run_timestamp" not in report

    def test_reports_are_reproducible(self, capsys):
        argv = ("verify", "fourT", "--max-n", "3", "--samples", "20", "--seed", "9", "-q")
        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert first.out == second.out

    def test_timings(self, capsys):
        _, out = run(capsys, "verify", "bound", "--max-n", "2", "-q", "--timings")
        report = json.loads(out.out)
        assert "run_timestamp" in report
        assert "wall_time" in report["suites"][0]

    def test_out_dir(self, capsys, tmp_path):
        code, out = run(capsys, "verify", "delcont", "--max-n", "3", "-q", "--out", str(tmp_path))
        assert code == EXIT_OK
        assert out.out == ""
        assert json.loads((tmp_path / "report.json").read_text())["ok"]
        assert (tmp_path / "summary.csv").read_text().startswith("suite,")

    def test_text_format(self, capsys):
        code, out = run(capsys, "verify", "triangle", "--host-n", "1", "--samples", "0",
                        "-q", "--fmt", "text")
        assert code == EXIT_OK
        assert "VERIFICATION SUMMARY" in out.out

    def test_unknown_suite(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["verify", "nope"])


class TestChordsAndScan:
    def test_eval_words(self, capsys):
        code, out = run(capsys, "chords", "eval", "--word", "abab", "--word", "aabb", "-q")
        records = json.loads(out.out)
        assert code == EXIT_OK
        assert [r["w_exact"] for r in records] == ["-3/2^6", "9/2^6"]

    def test_bad_word(self, capsys):
        code, _ = run(capsys, "chords", "eval", "--word", "abc", "-q")
        assert code == EXIT_INPUT

    def test_enumerate(self, capsys):
        code, out = run(capsys, "chords", "enumerate", "--chords", "3", "-q", "--fmt", "csv")
        assert code == EXIT_OK
        assert len(out.out.splitlines()) == 1 + 5

    def test_enumerate_needs_count(self, capsys):
        code, _ = run(capsys, "chords", "enumerate", "-q")
        assert code == EXIT_INPUT

    def test_scan_conjecture_never_fails(self, capsys):
        code, out = run(capsys, "scan-conjecture", "--max-n", "3", "-q")
        report = json.loads(out.out)
        assert code == EXIT_OK
        assert report["suites"][0]["asserted"] is False


class TestBench:
    def test_small_bench(self, capsys):
        code, out = run(capsys, "bench", "--max-n", "4", "-q")
        payload = json.loads(out.out)
        assert code == EXIT_OK
        assert payload[0]["agree"]
        assert {row["n"] for row in payload[0]["rows"]} == {4}


def test_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_FAILED, EXIT_INPUT}) == 3
