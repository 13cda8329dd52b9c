"""Dynamic-window obstacle avoidance on an occupancy costmap.

The package splits into five layers: unicycle kinematics, the costmap
(scan integration, inflation, clearance queries), the velocity-space
planner, the deterministic obstacle world + simulation loop, and the
scenario/reporting surface used by the CLI.
"""

from .costmap import (
    CellState,
    GridBoundsError,
    LaserScan,
    OccupancyGrid,
    inflate,
    integrate_scan,
    parse_pgm,
    point_clearance,
    ray_cells,
    trajectory_clearance,
    write_pgm,
)
from .kinematics import (
    Pose2D,
    Trajectory,
    VelocityCommand,
    heading_error,
    integrate_unicycle,
    rollout,
    wrap_angle,
)
from .planner import (
    PlanContext,
    PlannerParams,
    PlanResult,
    RobotLimits,
    ScoredCandidate,
    VelocityWindow,
    dynamic_window,
    emergency_stop,
    evaluate,
    is_admissible,
    plan,
    plan_result,
    sample_window,
    score_clearance,
    score_heading,
    score_velocity,
)
from .report import RunSummary, format_summary, read_trace, summarize, write_trace
from .scenario import (
    MapSpec,
    GoalSpec,
    RobotSpec,
    Scenario,
    ScenarioError,
    SimSpec,
    builtin_scenario,
    load_scenario,
    scenario_from_dict,
    scenario_to_dict,
    serialize_scenario,
)
from .sim import RunStatus, SimResult, TraceRecord, run_scenario, simulate
from .world import (
    Circle,
    ConstantVelocity,
    LidarModel,
    Obstacle,
    Rect,
    Static,
    Waypoints,
    World,
    advance_obstacles,
    cast_scan,
    collides,
    min_obstacle_distance,
)

__version__ = "0.1.0"

__all__ = [
    "CellState",
    "Circle",
    "ConstantVelocity",
    "GoalSpec",
    "GridBoundsError",
    "LaserScan",
    "LidarModel",
    "MapSpec",
    "Obstacle",
    "OccupancyGrid",
    "PlanContext",
    "PlannerParams",
    "PlanResult",
    "Pose2D",
    "Rect",
    "RobotLimits",
    "RobotSpec",
    "RunStatus",
    "RunSummary",
    "Scenario",
    "ScenarioError",
    "ScoredCandidate",
    "SimResult",
    "SimSpec",
    "Static",
    "TraceRecord",
    "Trajectory",
    "VelocityCommand",
    "VelocityWindow",
    "Waypoints",
    "World",
    "advance_obstacles",
    "builtin_scenario",
    "cast_scan",
    "collides",
    "dynamic_window",
    "emergency_stop",
    "evaluate",
    "format_summary",
    "heading_error",
    "inflate",
    "integrate_scan",
    "integrate_unicycle",
    "is_admissible",
    "load_scenario",
    "min_obstacle_distance",
    "parse_pgm",
    "plan",
    "plan_result",
    "point_clearance",
    "ray_cells",
    "read_trace",
    "rollout",
    "run_scenario",
    "sample_window",
    "scenario_from_dict",
    "scenario_to_dict",
    "score_clearance",
    "score_heading",
    "score_velocity",
    "serialize_scenario",
    "simulate",
    "summarize",
    "trajectory_clearance",
    "wrap_angle",
    "write_pgm",
    "write_trace",
]
