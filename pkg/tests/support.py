"""Shared oracles and builders used across the test modules.

Everything here is deliberately independent of the library internals:
Euler integration instead of the closed-form arc, exhaustive argmax
instead of the planner's reduction, brute-force geometry instead of
KD-tree queries. Tests compare library output against these.
"""

from __future__ import annotations

import math

import numpy as np

from dwanav.costmap import OccupancyGrid, trajectory_clearance
from dwanav.kinematics import Pose2D, VelocityCommand, rollout, wrap_angle
from dwanav.planner import (
    PlanContext,
    PlannerParams,
    RobotLimits,
    dynamic_window,
    evaluate,
    sample_window,
)


def euler_integrate(pose: Pose2D, cmd: VelocityCommand, dt: float, steps: int) -> tuple[float, float, float]:
    """Explicit first-order integration of the unicycle ODE; the reference
    for the closed-form arc."""
    x, y, th = pose.x, pose.y, pose.theta
    for _ in range(steps):
        x += cmd.v * math.cos(th) * dt
        y += cmd.v * math.sin(th) * dt
        th += cmd.omega * dt
    return x, y, th


def euler_endpoints(poses, cmds, total_t: float, steps: int) -> np.ndarray:
    """Vectorized Euler endpoints for many (pose, cmd) pairs at once."""
    x = np.array([p.x for p in poses])
    y = np.array([p.y for p in poses])
    th = np.array([p.theta for p in poses])
    v = np.array([c.v for c in cmds])
    w = np.array([c.omega for c in cmds])
    dt = total_t / steps
    for _ in range(steps):
        x = x + v * np.cos(th) * dt
        y = y + v * np.sin(th) * dt
        th = th + w * dt
    return np.column_stack([x, y, th])


def brute_force_plan(ctx: PlanContext):
    """Exhaustive reference for plan(): evaluate every sampled candidate via
    the public evaluate() and pick the admissible maximum with the documented
    tie-break (higher g, then higher v, then smaller |omega|, then negative
    omega first). Returns None when nothing is admissible."""
    window = dynamic_window(ctx.current_cmd, ctx.limits, ctx.params.control_dt)
    cands = [evaluate(c, ctx) for c in sample_window(window, ctx.params.n_v, ctx.params.n_omega)]
    best = None
    best_key = None
    for c in cands:
        if not c.admissible:
            continue
        key = (c.g, c.command.v, -abs(c.command.omega), 1.0 if c.command.omega < 0.0 else 0.0)
        if best_key is None or key > best_key:
            best, best_key = c, key
    return best


def brute_force_point_clearance(grid: OccupancyGrid, p, sentinel=10.0) -> float:
    """All-pairs minimum distance from p to occupied cell centers."""
    centers = grid.occupied_centers()
    if centers.size == 0:
        return sentinel
    return float(np.min(np.hypot(centers[:, 0] - p[0], centers[:, 1] - p[1])))


def random_context(rng: np.random.Generator, n_obstacle_cells: int = 25) -> PlanContext:
    """A randomized but always-valid planning context on a 6 m x 6 m grid."""
    grid = OccupancyGrid.from_map(6.0, 6.0, 0.1)
    from dwanav.costmap import CellState

    for _ in range(n_obstacle_cells):
        ix = int(rng.integers(0, grid.width_cells))
        iy = int(rng.integers(0, grid.height_cells))
        grid.mark_cell(ix, iy, CellState.OCCUPIED)
    limits = RobotLimits(
        v_max=float(rng.uniform(0.4, 1.0)),
        omega_max=float(rng.uniform(1.0, 2.5)),
        accel_v=float(rng.uniform(0.3, 1.0)),
        accel_omega=float(rng.uniform(1.0, 3.0)),
    )
    params = PlannerParams(
        alpha=float(rng.uniform(0.1, 1.0)),
        beta=float(rng.uniform(0.05, 0.6)),
        gamma=float(rng.uniform(0.05, 0.6)),
        horizon=float(rng.uniform(0.8, 2.0)),
        rollout_dt=0.1,
        n_v=int(rng.integers(3, 9)),
        n_omega=int(rng.integers(3, 11)),
        d_max_clearance=float(rng.uniform(1.0, 10.0)),
    )
    pose = Pose2D(
        float(rng.uniform(1.5, 4.5)),
        float(rng.uniform(1.5, 4.5)),
        float(rng.uniform(-math.pi, math.pi)),
    )
    cmd = VelocityCommand(
        float(rng.uniform(0.0, limits.v_max)),
        float(rng.uniform(-limits.omega_max, limits.omega_max)),
    )
    goal = (float(rng.uniform(0.5, 5.5)), float(rng.uniform(0.5, 5.5)))
    return PlanContext(
        current_pose=pose,
        current_cmd=cmd,
        goal=goal,
        grid=grid,
        footprint_radius=float(rng.uniform(0.1, 0.35)),
        limits=limits,
        params=params,
    )


def assert_pose_close(a: Pose2D, b: Pose2D, tol: float = 1e-9):
    assert math.hypot(a.x - b.x, a.y - b.y) <= tol, (a, b)
    assert abs(wrap_angle(a.theta - b.theta)) <= tol, (a, b)


# ---------------------------------------------------------------------------
# Randomized safety worlds
#
# The braking rule guarantees the robot can always stop short of what the
# costmap shows; stopping is only a *safe* outcome when moving obstacles do
# not converge on a robot that has yielded. These worlds are therefore drawn
# from the regime the guarantee covers: clutter and traffic are placed off
# the direct start-goal route, traffic never sweeps over the spawn or goal
# areas, and no two moving obstacles can pinch one point. Within that, arena
# size, headings, shape mix, sizes, speeds, and motion patterns all vary
# freely. Obstacle speeds stay at or below half the robot's top speed.
# ---------------------------------------------------------------------------


def _line_misses(point, origin, vel, keepout) -> bool:
    """True if a drifter from origin with velocity vel never passes within
    keepout of point (forward in time only)."""
    px, py = point[0] - origin[0], point[1] - origin[1]
    v2 = vel[0] ** 2 + vel[1] ** 2
    t = (px * vel[0] + py * vel[1]) / v2
    if t < 0.0:
        return True
    cx, cy = px - t * vel[0], py - t * vel[1]
    return math.hypot(cx, cy) >= keepout


def _seg_dist(point, a, b) -> float:
    """Distance from point to the segment a-b."""
    ax, ay = b[0] - a[0], b[1] - a[1]
    px, py = point[0] - a[0], point[1] - a[1]
    denom = ax * ax + ay * ay
    t = 0.0 if denom == 0 else max(0.0, min(1.0, (px * ax + py * ay) / denom))
    return math.hypot(px - t * ax, py - t * ay)


def _path_points(obstacle, duration: float, n: int = 48):
    """Sample an obstacle's center path over the run for separation checks."""
    from dwanav.world import ConstantVelocity

    c = obstacle.shape.center
    m = obstacle.motion
    if isinstance(m, ConstantVelocity):
        return [(c[0] + m.vx * duration * f, c[1] + m.vy * duration * f)
                for f in np.linspace(0.0, 1.0, n)]
    pts = m.points
    total = sum(math.hypot(pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1])
                for i in range(len(pts) - 1))
    out = []
    for f in np.linspace(0.0, 1.0, n):
        s = f * total
        for i in range(len(pts) - 1):
            leg = math.hypot(pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1])
            if s <= leg or i == len(pts) - 2:
                u = 0.0 if leg == 0 else min(1.0, s / leg)
                out.append((pts[i][0] + u * (pts[i + 1][0] - pts[i][0]),
                            pts[i][1] + u * (pts[i + 1][1] - pts[i][1])))
                break
            s -= leg
    return out


def safety_scenario(seed: int):
    """Randomized arena with static clutter and moving traffic, drawn so that
    yielding is always survivable (see module comment above)."""
    from dwanav.scenario import GoalSpec, MapSpec, RobotSpec, Scenario, SimSpec
    from dwanav.world import Circle, ConstantVelocity, LidarModel, Obstacle, Rect, Waypoints

    rng = np.random.default_rng(seed)
    w = float(rng.uniform(9.0, 11.0))
    h = float(rng.uniform(7.0, 9.0))
    start = Pose2D(
        float(rng.uniform(1.0, 2.0)),
        float(rng.uniform(1.5, h - 1.5)),
        float(rng.uniform(-math.pi, math.pi)),
    )
    goal = (float(rng.uniform(w - 2.0, w - 1.0)), float(rng.uniform(1.5, h - 1.5)))
    spt = (start.x, start.y)

    obstacles = []
    statics = []
    n_static = int(rng.integers(2, 5))
    tries = 0
    while len(statics) < n_static and tries < 400:
        tries += 1
        cx = float(rng.uniform(1.45, w - 1.45))
        cy = float(rng.uniform(1.45, h - 1.45))
        size = float(rng.uniform(0.2, 0.45))
        # leave a corridor along the direct route so traffic and walls are
        # the only things the robot must negotiate mid-transit
        if _seg_dist((cx, cy), spt, goal) < 1.0 + size:
            continue
        if math.hypot(cx - start.x, cy - start.y) < 1.2 + size:
            continue
        if math.hypot(cx - goal[0], cy - goal[1]) < 0.9 + size:
            continue
        if any(math.hypot(cx - sx, cy - sy) < 1.8 for sx, sy in statics):
            continue
        statics.append((cx, cy))
        if rng.random() < 0.5:
            obstacles.append(Obstacle(Circle((cx, cy), size)))
        else:
            obstacles.append(Obstacle(Rect((cx, cy), 2.0 * size, float(rng.uniform(0.3, 0.9)))))

    duration = 700 * 0.05
    paths = []
    n_dyn = int(rng.integers(1, 3))
    placed = 0
    tries = 0
    while placed < n_dyn and tries < 400:
        tries += 1
        cx = float(rng.uniform(1.5, w - 1.5))
        cy = float(rng.uniform(1.0, h - 1.0))
        r = float(rng.uniform(0.2, 0.35))
        if math.hypot(cx - start.x, cy - start.y) < 2.2 + r:
            continue
        speed = float(rng.uniform(0.1, 0.3))
        if rng.random() < 0.5:
            ang = float(rng.uniform(-math.pi, math.pi))
            vel = (speed * math.cos(ang), speed * math.sin(ang))
            # through traffic must not drive over the spawn or goal points,
            # where the robot is necessarily slow, nor sweep the route
            if not _line_misses(spt, (cx, cy), vel, 1.0 + r):
                continue
            if not _line_misses(goal, (cx, cy), vel, 0.9 + r):
                continue
            cand = Obstacle(Circle((cx, cy), r), ConstantVelocity(*vel))
            swept = _path_points(cand, duration)
            if min(_seg_dist(q, spt, goal) for q in swept) < 1.15 + r:
                continue
        else:
            p2 = (float(rng.uniform(1.0, w - 1.0)), float(rng.uniform(1.0, h - 1.0)))
            if math.hypot(p2[0] - cx, p2[1] - cy) < 0.5:
                continue
            if _seg_dist(spt, (cx, cy), p2) < 1.0 + r:
                continue
            if _seg_dist(goal, (cx, cy), p2) < 0.9 + r:
                continue
            if min(_seg_dist(q, spt, goal) for q in _path_points(
                    Obstacle(Circle((cx, cy), r), Waypoints(((cx, cy), p2), speed)),
                    duration)) < 1.15 + r:
                continue
            # patrol legs stay out of static cover so they are always visible
            if any(_seg_dist(s, (cx, cy), p2) < 1.2 for s in statics):
                continue
            cand = Obstacle(Circle((cx, cy), r), Waypoints(((cx, cy), p2), speed))
        # traffic paths keep apart: a waiting robot should never be pinched
        # between two moving obstacles at once
        path = _path_points(cand, duration)
        if any(min(math.hypot(a[0] - b[0], a[1] - b[1]) for a in path for b in other) < 1.8
               for other in paths):
            continue
        paths.append(path)
        obstacles.append(cand)
        placed += 1

    return Scenario(
        map=MapSpec(width=w, height=h),
        robot=RobotSpec(start=start, safety_margin=0.15),
        goal=GoalSpec(goal[0], goal[1]),
        obstacles=tuple(obstacles),
        lidar=LidarModel(beam_count=120, max_range=5.0),
        planner=PlannerParams(alpha=0.3, beta=0.6, gamma=0.4,
                              d_max_clearance=0.8, horizon=2.5),
        sim=SimSpec(sim_dt=0.05, max_steps=700, seed=0),
    )
