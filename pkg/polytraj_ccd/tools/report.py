"""
Reports - benchmark result models and writers

This module is responsible for:
1. TimingStats, BenchReport and AvoidanceReport pydantic models, and the
   BlockTally that benchmark blocks fill and merge
2. Turning raw nanosecond samples into mean / p50 / p99 in microseconds
3. Writing a report as JSON (default) or CSV (one row per metric)
"""

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from polytraj_ccd.core.collision import VerdictKind

VERDICTS = [kind.value for kind in VerdictKind]
MAX_LISTED_MISMATCHES = 20


class TimingStats(BaseModel):
    """Timing summary in microseconds"""
    model_config = ConfigDict(extra="forbid")

    count: int = Field(0, description="Number of samples")
    mean_us: float = Field(0.0, description="Mean (us)")
    p50_us: float = Field(0.0, description="Median (us)")
    p99_us: float = Field(0.0, description="99th percentile (us)")

    @classmethod
    def from_ns(cls, samples: Sequence[int]) -> "TimingStats":
        """
        Summarize nanosecond samples; an empty sample set gives zeros
        """
        values = np.asarray(samples, dtype=np.float64)
        if values.size == 0:
            return cls()
        p50, p99 = np.percentile(values, [50.0, 99.0])
        return cls(
            count=int(values.size),
            mean_us=float(values.mean()) / 1e3,
            p50_us=float(p50) / 1e3,
            p99_us=float(p99) / 1e3,
        )


class ValidationSummary(BaseModel):
    """Oracle re-verification of FEASIBLE verdicts"""
    model_config = ConfigDict(extra="forbid")

    oracle_dt: float = Field(..., description="Oracle sampling step (s)")
    checked: int = Field(0, description="FEASIBLE verdicts re-verified")
    mismatches: int = Field(0, description="FEASIBLE verdicts contradicted by the oracle")
    mismatch_trials: List[int] = Field(default_factory=list, description="Trial indices of the first mismatches")


class BenchReport(BaseModel):
    """Monte Carlo benchmark report"""
    model_config = ConfigDict(extra="forbid")

    benchmark: str
    seed: int
    trials: int = Field(..., description="Candidate trajectories generated")
    block_size: int = Field(..., description="Trials per random stream")
    workers: int = 1
    t_min: float
    input_infeasible: int = Field(0, description="Candidates discarded by input-feasibility screening")
    counts: Dict[str, int] = Field(default_factory=dict, description="Collision verdict counts")
    fractions: Dict[str, float] = Field(default_factory=dict, description="Collision verdict fractions")
    timings: Dict[str, TimingStats] = Field(default_factory=dict)
    collision_time_by_verdict: Dict[str, TimingStats] = Field(default_factory=dict)
    metrics: Dict[str, float] = Field(default_factory=dict, description="Benchmark-specific metrics")
    validation: Optional[ValidationSummary] = None


class SelectedCandidate(BaseModel):
    """Trajectory chosen by the avoidance loop"""
    model_config = ConfigDict(extra="forbid")

    end_position: Tuple[float, float, float]
    duration: float
    average_jerk_squared: float


class AvoidanceReport(BaseModel):
    """Result of one sample-and-select avoidance run"""
    model_config = ConfigDict(extra="forbid")

    scenario: str
    seed: int
    budget_ms: float
    elapsed_ms: float
    outcome: str = Field(..., description="SELECTED or NO_FEASIBLE_CANDIDATE")
    nominal_verdict: str
    candidates_evaluated: int = 0
    feasible_candidates: int = 0
    rejections: Dict[str, int] = Field(default_factory=dict)
    selected: Optional[SelectedCandidate] = None
    validation: Optional[ValidationSummary] = None


@dataclass
class BlockTally:
    """
    Raw results of one benchmark block; tallies merge associatively
    """
    trials: int = 0
    input_infeasible: int = 0
    counts: Dict[str, int] = field(default_factory=lambda: {v: 0 for v in VERDICTS})
    generation_ns: List[int] = field(default_factory=list)
    input_ns: List[int] = field(default_factory=list)
    collision_ns: Dict[str, List[int]] = field(default_factory=lambda: {v: [] for v in VERDICTS})
    validated: int = 0
    mismatch_trials: List[int] = field(default_factory=list)

    def record(self, verdict: VerdictKind, elapsed_ns: int):
        self.counts[verdict.value] += 1
        self.collision_ns[verdict.value].append(elapsed_ns)

    def absorb(self, other: "BlockTally"):
        """
        Add `other` into this tally in place
        """
        self.trials += other.trials
        self.input_infeasible += other.input_infeasible
        self.generation_ns.extend(other.generation_ns)
        self.input_ns.extend(other.input_ns)
        self.validated += other.validated
        self.mismatch_trials.extend(other.mismatch_trials)
        for v in VERDICTS:
            self.counts[v] += other.counts[v]
            self.collision_ns[v].extend(other.collision_ns[v])

    @classmethod
    def combine(cls, tallies: Sequence["BlockTally"]) -> "BlockTally":
        total = cls()
        for tally in tallies:
            total.absorb(tally)
        return total

    def to_report(self, benchmark: str, seed: int, block_size: int, workers: int, t_min: float,
                  oracle_dt: Optional[float] = None, metrics: Optional[Dict[str, float]] = None) -> BenchReport:
        all_collision = [ns for v in VERDICTS for ns in self.collision_ns[v]]
        validation = None
        if oracle_dt is not None:
            validation = ValidationSummary(
                oracle_dt=oracle_dt,
                checked=self.validated,
                mismatches=len(self.mismatch_trials),
                mismatch_trials=sorted(self.mismatch_trials)[:MAX_LISTED_MISMATCHES],
            )
        return BenchReport(
            benchmark=benchmark,
            seed=seed,
            trials=self.trials,
            block_size=block_size,
            workers=workers,
            t_min=t_min,
            input_infeasible=self.input_infeasible,
            counts=dict(self.counts),
            fractions=verdict_fractions(self.counts),
            timings={
                "generation": TimingStats.from_ns(self.generation_ns),
                "input_feasibility": TimingStats.from_ns(self.input_ns),
                "collision_detection": TimingStats.from_ns(all_collision),
            },
            collision_time_by_verdict={v: TimingStats.from_ns(self.collision_ns[v]) for v in VERDICTS},
            metrics=metrics or {},
            validation=validation,
        )


def verdict_fractions(counts: Mapping[str, int]) -> Dict[str, float]:
    """
    Fractions of each verdict; all zero when nothing was checked
    """
    total = sum(counts.get(v, 0) for v in VERDICTS)
    if total == 0:
        return {v: 0.0 for v in VERDICTS}
    return {v: counts.get(v, 0) / total for v in VERDICTS}


def flatten_metrics(data: Any, prefix: str = "") -> List[Tuple[str, Any]]:
    """
    Flatten a nested report dict into (dotted.name, value) rows
    """
    rows: List[Tuple[str, Any]] = []
    if isinstance(data, Mapping):
        for key, value in data.items():
            name = f"{prefix}.{key}" if prefix else str(key)
            rows.extend(flatten_metrics(value, name))
    elif isinstance(data, (list, tuple)):
        for index, value in enumerate(data):
            rows.extend(flatten_metrics(value, f"{prefix}.{index}"))
    elif data is not None:
        rows.append((prefix, data))
    return rows


def render_report(report: Union[BaseModel, Mapping[str, Any]], fmt: str = "json") -> str:
    """
    Serialize a report model, or an already JSON-ready dict, as JSON or CSV text
    """
    data = report.model_dump(mode="json") if isinstance(report, BaseModel) else report
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["metric", "value"])
        writer.writerows(flatten_metrics(data))
        return buffer.getvalue()
    return json.dumps(data, indent=2) + "\n"


def write_report(report: Union[BaseModel, Mapping[str, Any]], output: Optional[str] = None):
    """
    Write a report to `output` (.csv selects CSV, anything else JSON) or stdout
    """
    if output is None:
        sys.stdout.write(render_report(report, "json"))
        return
    fmt = "csv" if output.lower().endswith(".csv") else "json"
    with open(output, "w", encoding="utf-8", newline="") as f:
        f.write(render_report(report, fmt))


__all__ = [
    "VERDICTS",
    "TimingStats",
    "ValidationSummary",
    "BenchReport",
    "SelectedCandidate",
    "AvoidanceReport",
    "BlockTally",
    "verdict_fractions",
    "flatten_metrics",
    "render_report",
    "write_report",
]
