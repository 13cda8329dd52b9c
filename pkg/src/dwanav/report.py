"""Trace serialization and run summaries.

The trace CSV is the canonical run artifact: one row per sim tick with the
pose, the held command, ground-truth clearance, distance to goal, and the
run status. Floats are written with 6 significant digits, which is enough
to regenerate the velocity/heading plots while keeping files diffable.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from statistics import fmean

from .kinematics import Pose2D, VelocityCommand
from .sim import RunStatus, TraceRecord

TRACE_HEADER = "t,x,y,theta,v,omega,min_clearance,goal_dist,status"


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def write_trace(trace: list[TraceRecord]) -> str:
    """Render a trace as CSV text (header + one row per record)."""
    if not trace:
        raise ValueError("cannot serialize an empty trace")
    lines = [TRACE_HEADER]
    for r in trace:
        lines.append(
            ",".join(
                (
                    _fmt(r.t),
                    _fmt(r.pose.x),
                    _fmt(r.pose.y),
                    _fmt(r.pose.theta),
                    _fmt(r.cmd.v),
                    _fmt(r.cmd.omega),
                    _fmt(r.min_clearance),
                    _fmt(r.goal_dist),
                    r.status.value,
                )
            )
        )
    return "\n".join(lines) + "\n"


def read_trace(text: str) -> list[TraceRecord]:
    """Parse write_trace output back into records.

    The candidate count is not serialized, so it reads back as 0.
    """
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty trace document")
    if ",".join(rows[0]) != TRACE_HEADER:
        raise ValueError(f"unexpected trace header {','.join(rows[0])!r}")
    records = []
    for i, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 9:
            raise ValueError(f"line {i}: expected 9 columns, got {len(row)}")
        try:
            t, x, y, theta, v, omega, clr, gd = (float(c) for c in row[:8])
            status = RunStatus(row[8])
        except ValueError as exc:
            raise ValueError(f"line {i}: {exc}") from None
        records.append(
            TraceRecord(
                t=t,
                pose=Pose2D(x, y, theta),
                cmd=VelocityCommand(v, omega),
                min_clearance=clr,
                goal_dist=gd,
                candidates_evaluated=0,
                status=status,
            )
        )
    if not records:
        raise ValueError("trace has a header but no records")
    return records


@dataclass(frozen=True, slots=True)
class RunSummary:
    status: RunStatus
    time_to_goal: float
    path_length: float
    max_v: float
    mean_v: float
    min_clearance: float


def summarize(trace: list[TraceRecord]) -> RunSummary:
    """Aggregate a trace; time_to_goal is simply the final timestamp and is
    only meaningful when the run actually reached the goal."""
    if not trace:
        raise ValueError("cannot summarize an empty trace")
    path_length = 0.0
    for a, b in zip(trace, trace[1:]):
        dx = b.pose.x - a.pose.x
        dy = b.pose.y - a.pose.y
        path_length += (dx * dx + dy * dy) ** 0.5
    return RunSummary(
        status=trace[-1].status,
        time_to_goal=trace[-1].t,
        path_length=path_length,
        max_v=max(r.cmd.v for r in trace),
        mean_v=fmean(r.cmd.v for r in trace),
        min_clearance=min(r.min_clearance for r in trace),
    )


def format_summary(s: RunSummary) -> str:
    return "\n".join(
        (
            f"status:         {s.status.value}",
            f"time_to_goal:   {s.time_to_goal:.2f} s",
            f"path_length:    {s.path_length:.3f} m",
            f"max_v:          {s.max_v:.3f} m/s",
            f"mean_v:         {s.mean_v:.3f} m/s",
            f"min_clearance:  {s.min_clearance:.3f} m",
        )
    )
