from src.bench import Bench
from src.config import BenchConfig, GuardsConfig


class TestBench:
    def _bench(self, guards=None):
        config = BenchConfig(sizes=[4, 6], densities=[0.5], repeats=1, instances_per_bucket=2)
        return Bench(config, guards or GuardsConfig(), seed=1, verbose=False)

    def test_sizes(self):
        bench = self._bench()
        assert bench.sizes() == [4, 6]
        assert bench.sizes(5) == [4, 5]

    def test_rows_and_agreement(self):
        result = self._bench().run(4)
        assert result.instances == 2
        assert result.agree
        assert {row["evaluator"] for row in result.rows} == {"direct", "eulerian", "components", "delcont"}
        assert all(row["timed"] == 2 for row in result.rows)

    def test_refusals_are_recorded(self):
        result = self._bench(GuardsConfig(direct_max_edges=-1)).run(4)
        assert len(result.refusals) == 2
        assert all(r["evaluator"] == "direct" for r in result.refusals)
        direct = next(row for row in result.rows if row["evaluator"] == "direct")
        assert direct["refused"] == 2 and direct["timed"] == 0
