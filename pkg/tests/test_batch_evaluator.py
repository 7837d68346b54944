import pytest

from src.batch_evaluator import BatchEvaluator, diagram_record, graph_record, is_error
from src.chords import ChordDiagram
from src.config import GuardsConfig
from src.graph import complete, empty


class TestRecords:
    def test_graph_record(self):
        record = graph_record(complete(2), "eulerian", GuardsConfig())
        assert record["graph6"] == "A_"
        assert record["phi_exact"] == "-3/2^6"
        assert record["phi_decimal"] == "-0.046875"
        assert record["psi_exact"] == "-3/2^6"
        assert record["evaluators_compared"] == ["components", "delcont", "direct", "eulerian"]
        assert record["agree"]

    def test_guarded_evaluators_are_skipped(self):
        guards = GuardsConfig(direct_max_edges=0, psi_max_vertices=0)
        record = graph_record(complete(2), "eulerian", guards)
        assert "direct" not in record["evaluators_compared"]
        assert record["psi_exact"] is None

    def test_diagram_record(self):
        record = diagram_record(ChordDiagram.from_word("abab"), GuardsConfig())
        assert record["w_exact"] == record["phi_exact"] == "-3/2^6"
        assert record["agree"]


class TestBatchEvaluator:
    def test_lines_and_errors(self):
        evaluator = BatchEvaluator(verbose=False)
        records = evaluator.process_lines([(1, "A_"), (2, "Bz"), (3, "@")])
        assert [is_error(r) for r in records] == [False, True, False]
        assert records[1]["line"] == 2 and records[1]["error"] == "format"
        assert records[2]["phi_exact"] == "3/2^3"

    def test_size_guard_record(self):
        evaluator = BatchEvaluator(guards=GuardsConfig(eulerian_max_vertices=1), verbose=False)
        records = evaluator.process_lines([(1, "A_")])
        assert records[0]["error"] == "size_guard"
        assert records[0]["limit"] == 1

    def test_read_lines(self, tmp_path):
        source = tmp_path / "graphs.g6"
        source.write_text(">>graph6<<A_\n\nBw\n")
        assert BatchEvaluator(verbose=False).read_lines(str(source)) == [(1, "A_"), (3, "Bw")]

    def test_unknown_evaluator(self):
        with pytest.raises(ValueError):
            BatchEvaluator("psi")

    def test_chords(self):
        evaluator = BatchEvaluator(verbose=False)
        assert len(evaluator.enumerate_chords(3)) == 5
        records = evaluator.evaluate_words(["aabb", "abc"])
        assert records[0]["w_exact"] == "9/2^6"
        assert records[1]["error"] == "chord"

    def test_pool_matches_serial(self):
        lines = [(i, "Bw" if i % 2 else "Bg") for i in range(1, 9)]
        serial = BatchEvaluator(verbose=False).process_lines(lines)
        pooled = BatchEvaluator(workers=2, verbose=False).process_lines(lines)
        assert serial == pooled
        assert records_phi(serial) == {"15/2^9", "3/2^9"}


def records_phi(records):
    return {r["phi_exact"] for r in records}


def test_empty_graph_record():
    assert graph_record(empty(0), "delcont", GuardsConfig())["phi_exact"] == "1"
