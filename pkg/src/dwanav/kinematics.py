"""Differential-drive (unicycle) kinematics: poses, velocity commands, rollouts.

Constant (v, omega) commands trace circular arcs, so pose integration here is
closed form rather than numeric. All public operations are pure functions of
their arguments and the value types are frozen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

# Below this turn rate the arc closed form divides by a near-zero omega and
# cancels catastrophically; treat the motion as a straight segment instead.
OMEGA_STRAIGHT_EPS = 1e-9

# Goals closer than this to the pose have no defined bearing.
COINCIDENT_EPS = 1e-9


def wrap_angle(angle: float) -> float:
    """Wrap an angle in radians to the half-open interval (-pi, pi]."""
    return angle - TWO_PI * math.ceil((angle - math.pi) / TWO_PI)


@dataclass(frozen=True, slots=True)
class Pose2D:
    """Robot pose in the world frame (meters, radians).

    The heading is normalized to (-pi, pi] on construction, so pose equality
    is well defined without callers wrapping angles themselves.
    """

    x: float
    y: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", wrap_angle(self.theta))

    @property
    def position(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True, slots=True)
class VelocityCommand:
    """Forward speed v [m/s] and turn rate omega [rad/s].

    The robot drives forward only, so v must be non-negative.
    """

    v: float
    omega: float

    def __post_init__(self):
        if self.v < 0.0:
            raise ValueError(f"forward speed must be >= 0, got {self.v}")


@dataclass(frozen=True, slots=True)
class Trajectory:
    """Poses visited while holding one command, sampled every step_dt seconds."""

    poses: tuple[Pose2D, ...]
    step_dt: float
    command: VelocityCommand

    def __post_init__(self):
        if not self.poses:
            raise ValueError("trajectory must contain at least the start pose")

    @property
    def final_pose(self) -> Pose2D:
        return self.poses[-1]

    def positions(self) -> np.ndarray:
        """(N, 2) array of the trajectory's xy positions."""
        return np.array([(p.x, p.y) for p in self.poses], dtype=float)


def integrate_unicycle(pose: Pose2D, cmd: VelocityCommand, dt: float) -> Pose2D:
    """Advance a pose by holding (v, omega) constant for dt seconds.

    Exact solution: a circular arc of radius v/omega, or a straight segment
    of length v*dt when |omega| < 1e-9 rad/s (heading held in that branch).

    Parameters
    ----------
    pose : Pose2D
        Starting pose.
    cmd : VelocityCommand
        Command held over the interval.
    dt : float
        Duration in seconds, >= 0.
    """
    if dt < 0.0:
        raise ValueError(f"dt must be >= 0, got {dt}")
    v, omega = cmd.v, cmd.omega
    if abs(omega) < OMEGA_STRAIGHT_EPS:
        return Pose2D(
            pose.x + v * dt * math.cos(pose.theta),
            pose.y + v * dt * math.sin(pose.theta),
            pose.theta,
        )
    radius = v / omega
    theta1 = pose.theta + omega * dt
    return Pose2D(
        pose.x + radius * (math.sin(theta1) - math.sin(pose.theta)),
        pose.y + radius * (math.cos(pose.theta) - math.cos(theta1)),
        theta1,
    )


def rollout(pose: Pose2D, cmd: VelocityCommand, horizon: float, step_dt: float) -> Trajectory:
    """Forward-simulate a constant command, returning every intermediate pose.

    Produces ceil(horizon / step_dt) + 1 poses; the first is the input pose
    and consecutive poses are exactly one step_dt integration apart.
    """
    if horizon <= 0.0:
        raise ValueError(f"horizon must be > 0, got {horizon}")
    if step_dt <= 0.0 or step_dt > horizon:
        raise ValueError(f"step_dt must be in (0, horizon], got {step_dt}")
    # Relative guard keeps e.g. horizon=1.5/step=0.1 at 15 steps despite fp noise.
    n_steps = math.ceil((horizon / step_dt) * (1.0 - 1e-12))
    poses = [pose]
    current = pose
    for _ in range(n_steps):
        current = integrate_unicycle(current, cmd, step_dt)
        poses.append(current)
    return Trajectory(tuple(poses), step_dt, cmd)


def heading_error(pose: Pose2D, goal: tuple[float, float]) -> float:
    """Absolute angle in [0, pi] between the heading and the bearing to goal.

    A goal coincident with the pose position (within 1e-9 m) has no bearing;
    every heading counts as "toward" it and the error is 0.
    """
    dx = goal[0] - pose.x
    dy = goal[1] - pose.y
    if math.hypot(dx, dy) <= COINCIDENT_EPS:
        return 0.0
    return abs(wrap_angle(math.atan2(dy, dx) - pose.theta))
