"""
Report tests - timing summaries, tallies and output formats
"""

import csv
import io
import json

import pytest

from polytraj_ccd.core.collision import VerdictKind
from polytraj_ccd.tools.report import (
    BlockTally,
    TimingStats,
    flatten_metrics,
    render_report,
    verdict_fractions,
    write_report,
)


class TestTimingStats:
    """TimingStats.from_ns"""

    def test_summary(self):
        stats = TimingStats.from_ns([1000, 2000, 3000, 4000])
        assert stats.count == 4
        assert stats.mean_us == pytest.approx(2.5)
        assert stats.p50_us == pytest.approx(2.5)
        assert 3.9 < stats.p99_us <= 4.0

    def test_empty(self):
        assert TimingStats.from_ns([]) == TimingStats()


class TestBlockTally:
    """Tally merging and report building"""

    def setup_method(self):
        self.first = BlockTally(trials=3, input_infeasible=1, generation_ns=[10, 20, 30], input_ns=[1, 2, 3])
        self.first.record(VerdictKind.FEASIBLE, 100)
        self.first.record(VerdictKind.INFEASIBLE, 300)
        self.second = BlockTally(trials=2, generation_ns=[40, 50], input_ns=[4, 5])
        self.second.record(VerdictKind.FEASIBLE, 200)
        self.second.record(VerdictKind.INDETERMINABLE, 900)
        self.second.validated = 2
        self.second.mismatch_trials = [4]

    def test_combine(self):
        total = BlockTally.combine([self.first, self.second])
        assert total.trials == 5
        assert total.input_infeasible == 1
        assert total.counts == {"FEASIBLE": 2, "INFEASIBLE": 1, "INDETERMINABLE": 1}
        assert total.collision_ns["FEASIBLE"] == [100, 200]
        assert total.generation_ns == [10, 20, 30, 40, 50]
        # inputs untouched
        assert self.first.trials == 3

    def test_to_report(self):
        report = BlockTally.combine([self.first, self.second]).to_report(
            "random_sphere", 7, 3, 2, 0.002, oracle_dt=1e-4, metrics={"extra": 1.5}
        )
        assert report.fractions["FEASIBLE"] == pytest.approx(0.5)
        assert report.timings["collision_detection"].count == 4
        assert report.collision_time_by_verdict["INDETERMINABLE"].mean_us == pytest.approx(0.9)
        assert report.validation.checked == 2
        assert report.validation.mismatches == 1
        assert report.validation.mismatch_trials == [4]
        assert report.metrics == {"extra": 1.5}

    def test_without_validation(self):
        report = self.first.to_report("forest", 0, 3, 1, 0.002)
        assert report.validation is None


class TestRendering:
    """JSON / CSV output"""

    def setup_method(self):
        self.report = BlockTally(trials=1, generation_ns=[5], input_ns=[5]).to_report("random_sphere", 0, 1, 1, 0.002)

    def test_fractions_without_checks(self):
        assert verdict_fractions({}) == {"FEASIBLE": 0.0, "INFEASIBLE": 0.0, "INDETERMINABLE": 0.0}

    def test_flatten(self):
        rows = dict(flatten_metrics({"a": {"b": 1, "c": [2, 3]}, "d": None}))
        assert rows == {"a.b": 1, "a.c.0": 2, "a.c.1": 3}

    def test_csv(self):
        rows = list(csv.reader(io.StringIO(render_report(self.report, "csv"))))
        assert rows[0] == ["metric", "value"]
        metrics = dict(rows[1:])
        assert metrics["benchmark"] == "random_sphere"
        assert metrics["counts.FEASIBLE"] == "0"
        assert "validation" not in metrics

    def test_write_json_file(self, tmp_path):
        output = tmp_path / "report.json"
        write_report(self.report, str(output))
        assert json.loads(output.read_text(encoding="utf-8"))["trials"] == 1

    def test_write_stdout(self, capsys):
        write_report(self.report)
        assert json.loads(capsys.readouterr().out)["benchmark"] == "random_sphere"
