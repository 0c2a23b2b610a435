"""Per-stage wall-clock timing, run reports, and the stage-dominance check.

The dominance predicate estimates when the extraction stage outweighs the
fitting stage: extraction costs on the order of node_count *
community_count probes, fitting on the order of (k * r / t_star) *
node_count * (edges_per_node ** 2) operations, so extraction dominates
once

    community_count >> (k * r / t_star) * edges_per_node ** 2

with k the epoch count, r the mean affiliations per node, and t_star the
effective speedup of the threaded fitting stage.  ">>" is operationalized
as strictly greater than margin * rhs (margin defaults to 10).
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, TypeVar

from .errors import EmptyGraph, InvalidArgument, NestedStage
from .graph import NetworkStats
from .sparse import AffiliationMatrix

T = TypeVar("T")

STAGE_CT = "ct"
STAGE_GA = "ga"
STAGE_CA = "ca"


@dataclass
class StageTimings:
    ct_seconds: float = 0.0
    ga_seconds: float = 0.0
    ca_seconds: float = 0.0

    @property
    def total_seconds(self) -> float:
        return self.ct_seconds + self.ga_seconds + self.ca_seconds

    def proportions(self) -> dict[str, float] | None:
        """Fraction of total per stage (summing to 1), or None if nothing ran."""
        total = self.total_seconds
        if total <= 0.0:
            return None
        return {
            STAGE_CT: self.ct_seconds / total,
            STAGE_GA: self.ga_seconds / total,
            STAGE_CA: self.ca_seconds / total,
        }


class StageTimer:
    """Wall-clock scoping for pipeline stages; nesting is forbidden."""

    def __init__(self):
        self.seconds: dict[str, float] = {}
        self._active: str | None = None

    def time_stage(self, stage_id: str, thunk: Callable[[], T]) -> tuple[T, float]:
        """Run thunk, record its wall time under stage_id, return (result, seconds)."""
        if self._active is not None:
            raise NestedStage(f"stage {self._active!r} is still running")
        self._active = stage_id
        t0 = time.perf_counter()
        try:
            result = thunk()
        finally:
            self._active = None
        elapsed = time.perf_counter() - t0
        self.seconds[stage_id] = self.seconds.get(stage_id, 0.0) + elapsed
        return result, elapsed

    def timings(self) -> StageTimings:
        return StageTimings(
            ct_seconds=self.seconds.get(STAGE_CT, 0.0),
            ga_seconds=self.seconds.get(STAGE_GA, 0.0),
            ca_seconds=self.seconds.get(STAGE_CA, 0.0),
        )


def r_of(m: AffiliationMatrix) -> float:
    """Mean number of communities per node in the matrix (the fitted r)."""
    if m.node_count == 0:
        raise EmptyGraph("r is undefined for a matrix with no rows")
    return sum(len(row.ids) for row in m.rows) / m.node_count


class DominanceResult(NamedTuple):
    dominated: bool
    lhs: float
    rhs: float


def dominance_predicate(stats: NetworkStats, c_count: int, r: float,
                        k: int, t_star: float, margin: float = 10.0) -> DominanceResult:
    """Does extraction dominate the run?  lhs = community count,
    rhs = (k * r / t_star) * edges_per_node ** 2, dominated iff
    lhs > margin * rhs (strict).
    """
    checks = {
        "node_count": stats.node_count,
        "edge_count": stats.edge_count,
        "c_count": c_count,
        "r": r,
        "k": k,
        "t_star": t_star,
    }
    for name, value in checks.items():
        if value <= 0:
            raise InvalidArgument(f"{name} must be positive, got {value}")
    if margin < 1.0:
        raise InvalidArgument(f"margin must be >= 1, got {margin}")
    rhs = (k * r / t_star) * (stats.edge_count / stats.node_count) ** 2
    return DominanceResult(c_count > margin * rhs, float(c_count), rhs)


@dataclass
class RunReport:
    stats: NetworkStats
    timings: StageTimings
    c_count: int
    epochs: int
    workers: int
    r_estimate: float
    dominance: DominanceResult | None = None
    counters: dict[str, int] = field(default_factory=dict)
    extras: dict[str, float] = field(default_factory=dict)


def report_document(rr: RunReport) -> dict:
    """Report as a plain dict with stable key order (the JSON schema)."""
    doc: dict = {
        "network": {
            "nodes": rr.stats.node_count,
            "edges": rr.stats.edge_count,
            "edges_per_node": rr.stats.edges_per_node,
            "avg_degree": rr.stats.avg_degree,
        },
        "config": {
            "communities": rr.c_count,
            "epochs": rr.epochs,
            "workers": rr.workers,
        },
        "timings": {
            "ct_seconds": rr.timings.ct_seconds,
            "ga_seconds": rr.timings.ga_seconds,
            "ca_seconds": rr.timings.ca_seconds,
            "total_seconds": rr.timings.total_seconds,
        },
    }
    props = rr.timings.proportions()
    if props is not None:
        doc["proportions"] = props
    doc["r_estimate"] = rr.r_estimate
    if rr.dominance is not None:
        doc["dominance"] = {
            "dominated": rr.dominance.dominated,
            "lhs": rr.dominance.lhs,
            "rhs": rr.dominance.rhs,
        }
    doc["counters"] = dict(rr.counters)
    if rr.extras:
        doc["extras"] = dict(rr.extras)
    return doc


def emit_report(rr: RunReport, sink, format: str = "json") -> None:
    """Serialize the report as JSON or a human-readable table."""
    if format not in ("json", "text"):
        raise InvalidArgument(f"unknown report format {format!r}")
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            emit_report(rr, fh, format)
        return
    doc = report_document(rr)
    if format == "json":
        json.dump(doc, sink, indent=2)
        sink.write("\n")
        return
    props = rr.timings.proportions() or {}
    sink.write(f"network        |V|={rr.stats.node_count}  |E|={rr.stats.edge_count}  "
               f"|E|/|V|={rr.stats.edges_per_node:.4f}\n")
    sink.write(f"config         communities={rr.c_count}  epochs={rr.epochs}  workers={rr.workers}\n")
    for stage, label in ((STAGE_CT, "conductance"), (STAGE_GA, "ascent"), (STAGE_CA, "extraction")):
        secs = rr.timings.__dict__[f"{stage}_seconds"]
        share = f"{100.0 * props[stage]:5.1f}%" if stage in props else "   n/a"
        sink.write(f"stage {label:<12} {secs:10.4f}s  {share}\n")
    sink.write(f"r_estimate     {rr.r_estimate:.4f}\n")
    if rr.dominance is not None:
        d = rr.dominance
        sink.write(f"dominance      {'yes' if d.dominated else 'no'}  "
                   f"(lhs={d.lhs:.6g}, rhs={d.rhs:.6g})\n")
    for key, value in rr.counters.items():
        sink.write(f"counter {key:<14} {value}\n")
    for key, value in rr.extras.items():
        sink.write(f"extra {key:<16} {value:.6g}\n")


def parse_report(text: str) -> dict:
    """Parse the JSON form back into the report_document dict."""
    return json.loads(text)
