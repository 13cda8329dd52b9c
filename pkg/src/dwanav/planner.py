"""Dynamic Window Approach velocity-space search.

Each cycle: build the reachable window around the current command, sample
it on a fixed lattice, roll out every candidate, score

    g = alpha * angle + beta * dist + gamma * vel

with all three terms normalized to [0, 1], and return the best candidate
that could still stop before the nearest obstacle on its own trajectory.
If nothing admissible remains the planner brakes as hard as the limits
allow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .costmap import OccupancyGrid, trajectory_clearance
from .kinematics import Pose2D, Trajectory, VelocityCommand, heading_error, rollout


@dataclass(frozen=True, slots=True)
class RobotLimits:
    """Velocity and acceleration envelope of the drive."""

    v_max: float = 0.6
    omega_max: float = 1.5
    accel_v: float = 0.5
    accel_omega: float = 1.5

    def __post_init__(self):
        for name in ("v_max", "omega_max", "accel_v", "accel_omega"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True, slots=True)
class PlannerParams:
    """Objective weights and search discretization.

    The default weights favor goal heading with a light clearance and
    speed pull, which suits cluttered static maps; scenarios override
    them freely.
    """

    alpha: float = 0.85
    beta: float = 0.15
    gamma: float = 0.1
    control_dt: float = 0.2
    horizon: float = 1.5
    rollout_dt: float = 0.1
    n_v: int = 11
    n_omega: int = 21
    d_max_clearance: float = 10.0

    def __post_init__(self):
        if self.alpha < 0.0 or self.beta < 0.0 or self.gamma < 0.0:
            raise ValueError("objective weights must be >= 0")
        if self.alpha == 0.0 and self.beta == 0.0 and self.gamma == 0.0:
            raise ValueError("at least one objective weight must be positive")
        if self.control_dt <= 0.0:
            raise ValueError(f"control_dt must be > 0, got {self.control_dt}")
        if self.horizon <= 0.0:
            raise ValueError(f"horizon must be > 0, got {self.horizon}")
        if not 0.0 < self.rollout_dt <= self.horizon:
            raise ValueError("rollout_dt must satisfy 0 < rollout_dt <= horizon")
        if self.n_v < 2 or self.n_omega < 2:
            raise ValueError("n_v and n_omega must each be >= 2")
        if self.d_max_clearance <= 0.0:
            raise ValueError("d_max_clearance must be > 0")


@dataclass(frozen=True, slots=True)
class VelocityWindow:
    v_lo: float
    v_hi: float
    omega_lo: float
    omega_hi: float

    def __post_init__(self):
        if self.v_lo > self.v_hi or self.omega_lo > self.omega_hi:
            raise ValueError("window bounds out of order")

    def contains(self, cmd: VelocityCommand, tol: float = 1e-12) -> bool:
        return (
            self.v_lo - tol <= cmd.v <= self.v_hi + tol
            and self.omega_lo - tol <= cmd.omega <= self.omega_hi + tol
        )


@dataclass(frozen=True, slots=True)
class ScoredCandidate:
    command: VelocityCommand
    trajectory: Trajectory
    dist: float
    angle_score: float
    dist_score: float
    vel_score: float
    admissible: bool
    g: float


@dataclass(frozen=True)
class PlanContext:
    """Everything one planning cycle reads; treat as an immutable snapshot."""

    current_pose: Pose2D
    current_cmd: VelocityCommand
    goal: tuple[float, float]
    grid: OccupancyGrid
    footprint_radius: float
    limits: RobotLimits
    params: PlannerParams

    def __post_init__(self):
        if self.footprint_radius < 0.0:
            raise ValueError("footprint_radius must be >= 0")
        v, w = self.current_cmd.v, self.current_cmd.omega
        if v > self.limits.v_max + 1e-9 or abs(w) > self.limits.omega_max + 1e-9:
            raise ValueError(
                f"current command ({v}, {w}) outside the velocity envelope"
            )


@dataclass(frozen=True)
class PlanResult:
    """Selected command plus the full evaluated candidate set."""

    command: VelocityCommand
    best: ScoredCandidate | None
    candidates: tuple[ScoredCandidate, ...]
    window: VelocityWindow
    emergency: bool


def dynamic_window(
    current_cmd: VelocityCommand, limits: RobotLimits, control_dt: float
) -> VelocityWindow:
    """Velocities reachable within one control interval, clipped to the
    envelope (forward-only v, symmetric omega)."""
    dv = limits.accel_v * control_dt
    dw = limits.accel_omega * control_dt
    return VelocityWindow(
        v_lo=max(0.0, current_cmd.v - dv),
        v_hi=min(limits.v_max, current_cmd.v + dv),
        omega_lo=max(-limits.omega_max, current_cmd.omega - dw),
        omega_hi=min(limits.omega_max, current_cmd.omega + dw),
    )


def is_admissible(cmd: VelocityCommand, dist: float, limits: RobotLimits) -> bool:
    """Can the robot stop within dist?

    Both axes are checked against the braking bound sqrt(2 * dist * accel):
    the translational one against v, the rotational one against |omega|.
    """
    if dist < 0.0:
        raise ValueError(f"dist must be >= 0, got {dist}")
    return cmd.v <= math.sqrt(2.0 * dist * limits.accel_v) and abs(
        cmd.omega
    ) <= math.sqrt(2.0 * dist * limits.accel_omega)


def sample_window(
    window: VelocityWindow, n_v: int, n_omega: int
) -> list[VelocityCommand]:
    """n_v x n_omega lattice over the window, endpoints included, v-major
    order (all omegas for the lowest v first)."""
    if n_v < 2 or n_omega < 2:
        raise ValueError("n_v and n_omega must each be >= 2")
    vs = np.linspace(window.v_lo, window.v_hi, n_v)
    ws = np.linspace(window.omega_lo, window.omega_hi, n_omega)
    return [VelocityCommand(float(v), float(w)) for v in vs for w in ws]


def score_heading(predicted_pose: Pose2D, goal: tuple[float, float]) -> float:
    return 1.0 - heading_error(predicted_pose, goal) / math.pi


def score_clearance(dist: float, d_max_clearance: float) -> float:
    if dist < 0.0:
        raise ValueError(f"dist must be >= 0, got {dist}")
    return min(dist, d_max_clearance) / d_max_clearance


def score_velocity(v: float, v_max: float) -> float:
    return v / v_max


def evaluate(cmd: VelocityCommand, ctx: PlanContext) -> ScoredCandidate:
    """Roll out one candidate and score it.

    Inadmissible candidates still get a g value (useful for inspection)
    but are excluded at selection time.
    """
    p = ctx.params
    traj = rollout(ctx.current_pose, cmd, p.horizon, p.rollout_dt)
    dist = trajectory_clearance(ctx.grid, traj, ctx.footprint_radius, p.d_max_clearance)
    angle_score = score_heading(traj.final_pose, ctx.goal)
    dist_score = score_clearance(dist, p.d_max_clearance)
    vel_score = score_velocity(cmd.v, ctx.limits.v_max)
    return ScoredCandidate(
        command=cmd,
        trajectory=traj,
        dist=dist,
        angle_score=angle_score,
        dist_score=dist_score,
        vel_score=vel_score,
        admissible=is_admissible(cmd, dist, ctx.limits),
        g=p.alpha * angle_score + p.beta * dist_score + p.gamma * vel_score,
    )


def emergency_stop(
    current_cmd: VelocityCommand, limits: RobotLimits, control_dt: float
) -> VelocityCommand:
    """Maximal deceleration toward (0, 0) over one control interval."""
    v = max(0.0, current_cmd.v - limits.accel_v * control_dt)
    dw = limits.accel_omega * control_dt
    w = current_cmd.omega
    omega = max(0.0, w - dw) if w > 0.0 else min(0.0, w + dw)
    return VelocityCommand(v, omega)


def selection_key(cand: ScoredCandidate) -> tuple[float, float, float, float]:
    """Total order for the argmax: objective value, then faster, then
    straighter, then right turn (negative omega) before left."""
    w = cand.command.omega
    return (cand.g, cand.command.v, -abs(w), 1.0 if w < 0.0 else 0.0)


def plan_result(ctx: PlanContext) -> PlanResult:
    """One full planning cycle; always returns a command (emergency brake
    when no candidate is admissible)."""
    window = dynamic_window(ctx.current_cmd, ctx.limits, ctx.params.control_dt)
    candidates = tuple(
        evaluate(cmd, ctx)
        for cmd in sample_window(window, ctx.params.n_v, ctx.params.n_omega)
    )
    feasible = [c for c in candidates if c.admissible]
    if not feasible:
        stop = emergency_stop(ctx.current_cmd, ctx.limits, ctx.params.control_dt)
        return PlanResult(stop, None, candidates, window, emergency=True)
    best = max(feasible, key=selection_key)
    return PlanResult(best.command, best, candidates, window, emergency=False)


def plan(ctx: PlanContext) -> VelocityCommand:
    return plan_result(ctx).command
