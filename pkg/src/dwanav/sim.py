"""Closed sense -> map -> plan -> act simulation loop.

Physics and scans tick at sim_dt; the planner runs on the slower
control_dt cadence and its command is held (zero-order hold) in between.
Obstacle knowledge is rebuilt from the latest scan at every planning
cycle, so moving obstacles never leave stale marks behind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .costmap import OccupancyGrid, integrate_scan
from .kinematics import Pose2D, VelocityCommand, integrate_unicycle
from .planner import PlanContext, plan_result
from .scenario import Scenario
from .world import (
    World,
    advance_obstacles,
    cast_scan,
    collides,
    min_obstacle_distance,
)


class RunStatus(Enum):
    RUNNING = "Running"
    GOAL_REACHED = "GoalReached"
    COLLIDED = "Collided"
    TIMEOUT = "Timeout"


@dataclass(frozen=True, slots=True)
class TraceRecord:
    """State snapshot at one sim tick, before the tick's motion is applied."""

    t: float
    pose: Pose2D
    cmd: VelocityCommand
    min_clearance: float
    goal_dist: float
    candidates_evaluated: int
    status: RunStatus


@dataclass
class SimResult:
    records: list[TraceRecord]
    status: RunStatus
    final_grid: OccupancyGrid | None


def _clearance(world: World, pose: Pose2D, footprint_radius: float) -> float:
    """Ground-truth footprint-to-obstacle gap (walls excluded); clamped at 0
    once the footprint touches something."""
    return max(0.0, min_obstacle_distance(world, (pose.x, pose.y)) - footprint_radius)


def simulate(scenario: Scenario) -> SimResult:
    """Run a scenario to termination and return its trace.

    Each tick records the current state first, so a run that starts inside
    the goal tolerance yields exactly one GoalReached record. Goal beats
    collision when both hold on the same tick; Timeout fires once
    max_steps ticks have elapsed without another terminal state.
    """
    sim_dt = scenario.sim.sim_dt
    control_every = max(1, round(scenario.planner.control_dt / sim_dt))
    rng = np.random.default_rng(scenario.sim.seed)

    world = scenario.initial_world()
    pose = scenario.robot.start
    goal = (scenario.goal.x, scenario.goal.y)
    footprint = scenario.robot.footprint_radius
    planner_footprint = footprint + scenario.robot.safety_margin
    cmd = VelocityCommand(0.0, 0.0)
    n_candidates = 0
    grid: OccupancyGrid | None = None
    records: list[TraceRecord] = []

    for step in range(scenario.sim.max_steps + 1):
        t = step * sim_dt
        scan = cast_scan(world, pose, scenario.lidar, rng)

        if step % control_every == 0:
            fresh = OccupancyGrid.from_map(
                scenario.map.width, scenario.map.height, scenario.map.resolution
            )
            grid = integrate_scan(fresh, pose, scan)
            ctx = PlanContext(
                current_pose=pose,
                current_cmd=cmd,
                goal=goal,
                grid=grid,
                footprint_radius=planner_footprint,
                limits=scenario.robot.limits,
                params=scenario.planner,
            )
            result = plan_result(ctx)
            cmd = result.command
            n_candidates = len(result.candidates)

        goal_dist = math.hypot(pose.x - goal[0], pose.y - goal[1])
        if goal_dist <= scenario.goal.tolerance:
            status = RunStatus.GOAL_REACHED
        elif collides(world, pose, footprint):
            status = RunStatus.COLLIDED
        elif step == scenario.sim.max_steps:
            status = RunStatus.TIMEOUT
        else:
            status = RunStatus.RUNNING

        records.append(
            TraceRecord(
                t=t,
                pose=pose,
                cmd=cmd,
                min_clearance=_clearance(world, pose, footprint),
                goal_dist=goal_dist,
                candidates_evaluated=n_candidates,
                status=status,
            )
        )
        if status is not RunStatus.RUNNING:
            break

        pose = integrate_unicycle(pose, cmd, sim_dt)
        world = advance_obstacles(world, sim_dt)

    return SimResult(records=records, status=records[-1].status, final_grid=grid)


def run_scenario(scenario: Scenario) -> list[TraceRecord]:
    """Trace-only wrapper around simulate."""
    return simulate(scenario).records
