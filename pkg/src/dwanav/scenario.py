"""Scenario documents: validated world + robot + planner configuration.

A scenario is a JSON object with sections map, robot, lidar, goal,
obstacles, planner, sim. Only map extent, robot start, and goal position
are required; everything else has defaults. Validation errors always name
the offending field path (e.g. "map.resolution") so a bad document is
diagnosable without reading tracebacks.

Three built-in scenarios reconstruct the standard evaluation layouts:
a static slalom, a head-on moving obstacle, and a mixed static/dynamic
arena, each with its own objective weighting.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .kinematics import Pose2D
from .planner import PlannerParams, RobotLimits
from .world import (
    Circle,
    ConstantVelocity,
    LidarModel,
    Obstacle,
    Rect,
    Static,
    Waypoints,
    World,
)

_MISSING = object()


class ScenarioError(ValueError):
    """Invalid scenario document; .field holds the dotted path."""

    def __init__(self, field_path: str, message: str):
        self.field = field_path
        super().__init__(f"{field_path}: {message}")


@dataclass(frozen=True, slots=True)
class MapSpec:
    """Arena extent and costmap granularity; origin is pinned at (0, 0)."""

    width: float
    height: float
    resolution: float = 0.05
    inflation_radius: float = 0.25

    def __post_init__(self):
        if self.width <= 0.0 or self.height <= 0.0:
            raise ValueError("map extent must be positive")
        if self.resolution <= 0.0:
            raise ValueError("resolution must be > 0")
        if self.inflation_radius < 0.0:
            raise ValueError("inflation_radius must be >= 0")


@dataclass(frozen=True, slots=True)
class RobotSpec:
    """Physical robot plus the planner's extra caution.

    safety_margin widens the footprint the planner plans against; it
    absorbs costmap discretization (clearance is measured to cell centers)
    and the distance travelled while a command is held between planning
    cycles. Ground-truth collision always uses the bare footprint.
    """

    start: Pose2D
    footprint_radius: float = 0.25
    safety_margin: float = 0.15
    limits: RobotLimits = field(default_factory=RobotLimits)

    def __post_init__(self):
        if self.footprint_radius <= 0.0:
            raise ValueError("footprint_radius must be > 0")
        if self.safety_margin < 0.0:
            raise ValueError("safety_margin must be >= 0")


@dataclass(frozen=True, slots=True)
class GoalSpec:
    x: float
    y: float
    tolerance: float = 0.2

    def __post_init__(self):
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be > 0")


@dataclass(frozen=True, slots=True)
class SimSpec:
    sim_dt: float = 0.05
    max_steps: int = 800
    seed: int = 0

    def __post_init__(self):
        if self.sim_dt <= 0.0:
            raise ValueError("sim_dt must be > 0")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


@dataclass(frozen=True)
class Scenario:
    map: MapSpec
    robot: RobotSpec
    goal: GoalSpec
    obstacles: tuple[Obstacle, ...] = ()
    lidar: LidarModel = field(default_factory=LidarModel)
    planner: PlannerParams = field(default_factory=PlannerParams)
    sim: SimSpec = field(default_factory=SimSpec)

    def __post_init__(self):
        if not isinstance(self.obstacles, tuple):
            object.__setattr__(self, "obstacles", tuple(self.obstacles))
        w, h = self.map.width, self.map.height
        if not (0.0 <= self.robot.start.x <= w and 0.0 <= self.robot.start.y <= h):
            raise ScenarioError("robot.start", f"outside map bounds {w} x {h}")
        if not (0.0 <= self.goal.x <= w and 0.0 <= self.goal.y <= h):
            raise ScenarioError("goal", f"outside map bounds {w} x {h}")
        for i, obs in enumerate(self.obstacles):
            cx, cy = obs.shape.center
            if not (0.0 <= cx <= w and 0.0 <= cy <= h):
                raise ScenarioError(
                    f"obstacles[{i}].shape.center", f"outside map bounds {w} x {h}"
                )

    def initial_world(self) -> World:
        return World((0.0, 0.0, self.map.width, self.map.height), self.obstacles)


# -- document parsing --------------------------------------------------------


def _section(doc: dict, key: str, path: str = "", *, required: bool = False) -> dict:
    where = f"{path}.{key}" if path else key
    if key not in doc:
        if required:
            raise ScenarioError(where, "required section is missing")
        return {}
    val = doc[key]
    if not isinstance(val, dict):
        raise ScenarioError(where, f"expected an object, got {type(val).__name__}")
    return val


def _check_keys(d: dict, allowed: set[str], path: str) -> None:
    for key in d:
        if key not in allowed:
            where = f"{path}.{key}" if path else str(key)
            raise ScenarioError(where, "unknown key")


def _num(d: dict, key: str, path: str, default=_MISSING, *, positive=False, nonneg=False) -> float:
    where = f"{path}.{key}" if path else key
    if key not in d:
        if default is _MISSING:
            raise ScenarioError(where, "required field is missing")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ScenarioError(where, f"expected a number, got {v!r}")
    v = float(v)
    if positive and v <= 0.0:
        raise ScenarioError(where, f"must be > 0, got {v}")
    if nonneg and v < 0.0:
        raise ScenarioError(where, f"must be >= 0, got {v}")
    return v


def _int(d: dict, key: str, path: str, default=_MISSING, *, minimum=None) -> int:
    where = f"{path}.{key}" if path else key
    if key not in d:
        if default is _MISSING:
            raise ScenarioError(where, "required field is missing")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ScenarioError(where, f"expected an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ScenarioError(where, f"must be >= {minimum}, got {v}")
    return v


def _point(d: dict, key: str, path: str) -> tuple[float, float]:
    where = f"{path}.{key}" if path else key
    if key not in d:
        raise ScenarioError(where, "required field is missing")
    v = d[key]
    if (
        not isinstance(v, (list, tuple))
        or len(v) != 2
        or any(isinstance(c, bool) or not isinstance(c, (int, float)) for c in v)
    ):
        raise ScenarioError(where, f"expected [x, y], got {v!r}")
    return (float(v[0]), float(v[1]))


def _parse_map(doc: dict) -> MapSpec:
    d = _section(doc, "map", required=True)
    _check_keys(d, {"width", "height", "resolution", "inflation_radius"}, "map")
    return MapSpec(
        width=_num(d, "width", "map", positive=True),
        height=_num(d, "height", "map", positive=True),
        resolution=_num(d, "resolution", "map", 0.05, positive=True),
        inflation_radius=_num(d, "inflation_radius", "map", 0.25, nonneg=True),
    )


def _parse_robot(doc: dict) -> RobotSpec:
    d = _section(doc, "robot", required=True)
    _check_keys(d, {"start", "footprint_radius", "safety_margin", "limits"}, "robot")
    s = _section(d, "start", "robot", required=True)
    _check_keys(s, {"x", "y", "theta"}, "robot.start")
    start = Pose2D(
        _num(s, "x", "robot.start"),
        _num(s, "y", "robot.start"),
        _num(s, "theta", "robot.start", 0.0),
    )
    lim = _section(d, "limits", "robot")
    _check_keys(lim, {"v_max", "omega_max", "accel_v", "accel_omega"}, "robot.limits")
    limits = RobotLimits(
        v_max=_num(lim, "v_max", "robot.limits", 0.6, positive=True),
        omega_max=_num(lim, "omega_max", "robot.limits", 1.5, positive=True),
        accel_v=_num(lim, "accel_v", "robot.limits", 0.5, positive=True),
        accel_omega=_num(lim, "accel_omega", "robot.limits", 1.5, positive=True),
    )
    return RobotSpec(
        start=start,
        footprint_radius=_num(d, "footprint_radius", "robot", 0.25, positive=True),
        safety_margin=_num(d, "safety_margin", "robot", 0.15, nonneg=True),
        limits=limits,
    )


def _parse_lidar(doc: dict) -> LidarModel:
    d = _section(doc, "lidar")
    _check_keys(d, {"fov", "beam_count", "max_range", "noise_std"}, "lidar")
    fov = _num(d, "fov", "lidar", 2.0 * math.pi, positive=True)
    if fov > 2.0 * math.pi + 1e-12:
        raise ScenarioError("lidar.fov", f"must be <= 2*pi, got {fov}")
    return LidarModel(
        fov=fov,
        beam_count=_int(d, "beam_count", "lidar", 180, minimum=1),
        max_range=_num(d, "max_range", "lidar", 5.0, positive=True),
        noise_std=_num(d, "noise_std", "lidar", 0.0, nonneg=True),
    )


def _parse_goal(doc: dict) -> GoalSpec:
    d = _section(doc, "goal", required=True)
    _check_keys(d, {"x", "y", "tolerance"}, "goal")
    return GoalSpec(
        x=_num(d, "x", "goal"),
        y=_num(d, "y", "goal"),
        tolerance=_num(d, "tolerance", "goal", 0.2, positive=True),
    )


def _parse_shape(d: dict, path: str):
    if not isinstance(d, dict):
        raise ScenarioError(path, "expected an object")
    kind = d.get("type")
    if kind == "circle":
        _check_keys(d, {"type", "center", "radius"}, path)
        return Circle(_point(d, "center", path), _num(d, "radius", path, positive=True))
    if kind == "rect":
        _check_keys(d, {"type", "center", "width", "height"}, path)
        return Rect(
            _point(d, "center", path),
            _num(d, "width", path, positive=True),
            _num(d, "height", path, positive=True),
        )
    raise ScenarioError(f"{path}.type", f"expected 'circle' or 'rect', got {kind!r}")


def _parse_motion(d: dict, path: str):
    if not isinstance(d, dict):
        raise ScenarioError(path, "expected an object")
    kind = d.get("type", "static")
    if kind == "static":
        _check_keys(d, {"type"}, path)
        return Static()
    if kind == "constant_velocity":
        _check_keys(d, {"type", "vx", "vy"}, path)
        return ConstantVelocity(_num(d, "vx", path, 0.0), _num(d, "vy", path, 0.0))
    if kind == "waypoints":
        _check_keys(d, {"type", "points", "speed"}, path)
        raw = d.get("points")
        if not isinstance(raw, list) or len(raw) < 2:
            raise ScenarioError(f"{path}.points", "expected a list of >= 2 points")
        pts = []
        for i, item in enumerate(raw):
            if (
                not isinstance(item, (list, tuple))
                or len(item) != 2
                or any(isinstance(c, bool) or not isinstance(c, (int, float)) for c in item)
            ):
                raise ScenarioError(f"{path}.points[{i}]", f"expected [x, y], got {item!r}")
            pts.append((float(item[0]), float(item[1])))
        pts = tuple(pts)
        speed = _num(d, "speed", path, positive=True)
        try:
            return Waypoints(pts, speed)
        except ValueError as exc:
            raise ScenarioError(f"{path}.points", str(exc)) from None
    raise ScenarioError(
        f"{path}.type",
        f"expected 'static', 'constant_velocity' or 'waypoints', got {kind!r}",
    )


def _parse_obstacles(doc: dict) -> tuple[Obstacle, ...]:
    raw = doc.get("obstacles", [])
    if not isinstance(raw, list):
        raise ScenarioError("obstacles", f"expected a list, got {type(raw).__name__}")
    out = []
    for i, item in enumerate(raw):
        path = f"obstacles[{i}]"
        if not isinstance(item, dict):
            raise ScenarioError(path, "expected an object")
        _check_keys(item, {"shape", "motion"}, path)
        if "shape" not in item:
            raise ScenarioError(f"{path}.shape", "required field is missing")
        shape = _parse_shape(item["shape"], f"{path}.shape")
        motion = _parse_motion(item.get("motion", {}), f"{path}.motion")
        out.append(Obstacle(shape, motion))
    return tuple(out)


def _parse_planner(doc: dict) -> PlannerParams:
    d = _section(doc, "planner")
    allowed = {
        "alpha", "beta", "gamma", "control_dt", "horizon",
        "rollout_dt", "n_v", "n_omega", "d_max_clearance",
    }
    _check_keys(d, allowed, "planner")
    try:
        return PlannerParams(
            alpha=_num(d, "alpha", "planner", 0.85, nonneg=True),
            beta=_num(d, "beta", "planner", 0.15, nonneg=True),
            gamma=_num(d, "gamma", "planner", 0.1, nonneg=True),
            control_dt=_num(d, "control_dt", "planner", 0.2, positive=True),
            horizon=_num(d, "horizon", "planner", 1.5, positive=True),
            rollout_dt=_num(d, "rollout_dt", "planner", 0.1, positive=True),
            n_v=_int(d, "n_v", "planner", 11, minimum=2),
            n_omega=_int(d, "n_omega", "planner", 21, minimum=2),
            d_max_clearance=_num(d, "d_max_clearance", "planner", 10.0, positive=True),
        )
    except ScenarioError:
        raise
    except ValueError as exc:
        raise ScenarioError("planner", str(exc)) from None


def _parse_sim(doc: dict) -> SimSpec:
    d = _section(doc, "sim")
    _check_keys(d, {"sim_dt", "max_steps", "seed"}, "sim")
    return SimSpec(
        sim_dt=_num(d, "sim_dt", "sim", 0.05, positive=True),
        max_steps=_int(d, "max_steps", "sim", 800, minimum=1),
        seed=_int(d, "seed", "sim", 0),
    )


def scenario_from_dict(doc: dict) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("$", f"expected a JSON object, got {type(doc).__name__}")
    _check_keys(
        doc, {"map", "robot", "lidar", "goal", "obstacles", "planner", "sim"}, ""
    )
    return Scenario(
        map=_parse_map(doc),
        robot=_parse_robot(doc),
        goal=_parse_goal(doc),
        obstacles=_parse_obstacles(doc),
        lidar=_parse_lidar(doc),
        planner=_parse_planner(doc),
        sim=_parse_sim(doc),
    )


def load_scenario(text: str) -> Scenario:
    """Parse and validate a scenario JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            "$", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    return scenario_from_dict(doc)


# -- serialization -----------------------------------------------------------


def _shape_to_dict(shape) -> dict:
    if isinstance(shape, Circle):
        return {"type": "circle", "center": list(shape.center), "radius": shape.radius}
    return {
        "type": "rect",
        "center": list(shape.center),
        "width": shape.width,
        "height": shape.height,
    }


def _motion_to_dict(motion) -> dict:
    if isinstance(motion, Static):
        return {"type": "static"}
    if isinstance(motion, ConstantVelocity):
        return {"type": "constant_velocity", "vx": motion.vx, "vy": motion.vy}
    return {
        "type": "waypoints",
        "points": [list(p) for p in motion.points],
        "speed": motion.speed,
    }


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "map": {
            "width": s.map.width,
            "height": s.map.height,
            "resolution": s.map.resolution,
            "inflation_radius": s.map.inflation_radius,
        },
        "robot": {
            "start": {"x": s.robot.start.x, "y": s.robot.start.y, "theta": s.robot.start.theta},
            "footprint_radius": s.robot.footprint_radius,
            "safety_margin": s.robot.safety_margin,
            "limits": {
                "v_max": s.robot.limits.v_max,
                "omega_max": s.robot.limits.omega_max,
                "accel_v": s.robot.limits.accel_v,
                "accel_omega": s.robot.limits.accel_omega,
            },
        },
        "lidar": {
            "fov": s.lidar.fov,
            "beam_count": s.lidar.beam_count,
            "max_range": s.lidar.max_range,
            "noise_std": s.lidar.noise_std,
        },
        "goal": {"x": s.goal.x, "y": s.goal.y, "tolerance": s.goal.tolerance},
        "obstacles": [
            {"shape": _shape_to_dict(o.shape), "motion": _motion_to_dict(o.motion)}
            for o in s.obstacles
        ],
        "planner": {
            "alpha": s.planner.alpha,
            "beta": s.planner.beta,
            "gamma": s.planner.gamma,
            "control_dt": s.planner.control_dt,
            "horizon": s.planner.horizon,
            "rollout_dt": s.planner.rollout_dt,
            "n_v": s.planner.n_v,
            "n_omega": s.planner.n_omega,
            "d_max_clearance": s.planner.d_max_clearance,
        },
        "sim": {"sim_dt": s.sim.sim_dt, "max_steps": s.sim.max_steps, "seed": s.sim.seed},
    }


def serialize_scenario(s: Scenario) -> str:
    return json.dumps(scenario_to_dict(s), indent=2) + "\n"


# -- built-in scenarios ------------------------------------------------------

_ARENA = MapSpec(width=10.0, height=8.0)
# Start heading is deliberately oblique to the start->goal chord: with a
# heading-dominated objective, a robot aimed dead at the goal treats "stop
# and keep pointing" as a perfect-score attractor in front of obstacles.
_START = Pose2D(1.0, 5.5, 0.0)
_GOAL = GoalSpec(9.0, 3.0)


def builtin_scenario(case_id: int) -> Scenario:
    """Three canonical obstacle courses on a 10 m x 8 m arena.

    1: static slalom (circle, box, circle) that forces two swerves;
       heading-dominant weights.
    2: one obstacle driving straight at the robot; speed-hungry weights
       so the pass is followed by a quick return to full velocity.
    3: two static obstacles plus one crossing dynamic obstacle.
    """
    if case_id == 1:
        return Scenario(
            map=_ARENA,
            robot=RobotSpec(start=_START),
            goal=_GOAL,
            obstacles=(
                Obstacle(Circle((3.17, 3.72), 0.45)),
                Obstacle(Rect((5.91, 5.12), 0.9, 0.9)),
                Obstacle(Circle((7.13, 2.66), 0.3)),
            ),
            planner=PlannerParams(alpha=0.85, beta=0.15, gamma=0.1, d_max_clearance=2.0),
        )
    if case_id == 2:
        return Scenario(
            map=_ARENA,
            robot=RobotSpec(start=_START),
            goal=_GOAL,
            obstacles=(
                Obstacle(
                    Circle((7.89, 2.39), 0.35), ConstantVelocity(-0.2863, 0.0895)
                ),
            ),
            planner=PlannerParams(alpha=1.0, beta=0.1, gamma=0.5, d_max_clearance=2.0),
        )
    if case_id == 3:
        return Scenario(
            map=_ARENA,
            robot=RobotSpec(start=_START),
            goal=_GOAL,
            obstacles=(
                Obstacle(Circle((3.15, 3.67), 0.4)),
                Obstacle(Rect((6.11, 5.09), 0.8, 0.8)),
                Obstacle(
                    Circle((7.02, 2.62), 0.3), ConstantVelocity(-0.2863, 0.0895)
                ),
            ),
            planner=PlannerParams(alpha=1.0, beta=0.1, gamma=0.1, d_max_clearance=2.0),
        )
    raise ValueError(f"unknown case id {case_id!r} (expected 1, 2 or 3)")
