"""Deterministic obstacle world with an analytic range sensor.

Obstacles are circles and axis-aligned rectangles, optionally scripted to
translate at constant velocity or to shuttle along a waypoint polyline
(ping-pong). The lidar model intersects rays with the shapes in closed
form, so scan ranges are exact up to floating point and need no sampling
tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .costmap import LaserScan
from .kinematics import Pose2D

#: Clearance reported by min_obstacle_distance when the world has no obstacles.
OPEN_WORLD_CLEARANCE = 10.0


# -- shapes ------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Circle:
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError(f"radius must be > 0, got {self.radius}")


@dataclass(frozen=True, slots=True)
class Rect:
    """Axis-aligned rectangle given by center and full side lengths."""

    center: tuple[float, float]
    width: float
    height: float

    def __post_init__(self):
        if self.width <= 0.0 or self.height <= 0.0:
            raise ValueError("rect sides must be > 0")


Shape = Circle | Rect


# -- motion scripts ----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Static:
    pass


@dataclass(frozen=True, slots=True)
class ConstantVelocity:
    vx: float
    vy: float


@dataclass(frozen=True, slots=True)
class Waypoints:
    """Shuttle along a polyline at constant speed, reversing at the ends."""

    points: tuple[tuple[float, float], ...]
    speed: float

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("waypoint path needs at least 2 points")
        if self.speed <= 0.0:
            raise ValueError(f"waypoint speed must be > 0, got {self.speed}")
        if self._total_length() <= 0.0:
            raise ValueError("waypoint path has zero length")

    def _total_length(self) -> float:
        return sum(
            math.hypot(bx - ax, by - ay)
            for (ax, ay), (bx, by) in zip(self.points, self.points[1:])
        )

    def position_at(self, t: float) -> tuple[float, float]:
        """Polyline point after travelling speed*t from points[0], folding
        the distance back and forth over the path (triangle wave)."""
        total = self._total_length()
        s = (self.speed * t) % (2.0 * total)
        if s > total:
            s = 2.0 * total - s
        for (ax, ay), (bx, by) in zip(self.points, self.points[1:]):
            seg = math.hypot(bx - ax, by - ay)
            if s <= seg or seg == 0.0:
                if seg == 0.0:
                    continue
                f = s / seg
                return (ax + f * (bx - ax), ay + f * (by - ay))
            s -= seg
        return self.points[-1]


Motion = Static | ConstantVelocity | Waypoints


@dataclass(frozen=True, slots=True)
class Obstacle:
    shape: Shape
    motion: Motion = field(default_factory=Static)


@dataclass(frozen=True, slots=True)
class LidarModel:
    fov: float = 2.0 * math.pi
    beam_count: int = 180
    max_range: float = 5.0
    noise_std: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.fov <= 2.0 * math.pi + 1e-12:
            raise ValueError(f"fov must be in (0, 2*pi], got {self.fov}")
        if self.beam_count < 1:
            raise ValueError("beam_count must be >= 1")
        if self.max_range <= 0.0:
            raise ValueError("max_range must be > 0")
        if self.noise_std < 0.0:
            raise ValueError("noise_std must be >= 0")

    def beam_angles(self) -> np.ndarray:
        """Sensor-frame beam directions, symmetric about the heading."""
        if self.beam_count == 1:
            return np.zeros(1)
        return np.linspace(-0.5 * self.fov, 0.5 * self.fov, self.beam_count)


@dataclass(frozen=True)
class World:
    """Axis-aligned arena (xmin, ymin, xmax, ymax) plus its obstacles."""

    bounds: tuple[float, float, float, float]
    obstacles: tuple[Obstacle, ...] = ()
    time: float = 0.0

    def __post_init__(self):
        xmin, ymin, xmax, ymax = self.bounds
        if xmax <= xmin or ymax <= ymin:
            raise ValueError(f"degenerate world bounds {self.bounds}")
        if not isinstance(self.obstacles, tuple):
            object.__setattr__(self, "obstacles", tuple(self.obstacles))


def _shape_at(obs: Obstacle, t: float) -> Shape:
    """Obstacle shape translated to its scripted position at time t."""
    m = obs.motion
    if isinstance(m, Static):
        return obs.shape
    if isinstance(m, ConstantVelocity):
        dx, dy = m.vx * t, m.vy * t
    else:
        x0, y0 = m.position_at(0.0)
        x1, y1 = m.position_at(t)
        dx, dy = x1 - x0, y1 - y0
    cx, cy = obs.shape.center
    return replace(obs.shape, center=(cx + dx, cy + dy))


def advance_obstacles(world: World, dt: float) -> World:
    """World dt seconds later: scripted shapes moved, clock advanced."""
    if dt <= 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    t0, t1 = world.time, world.time + dt
    moved = []
    for obs in world.obstacles:
        if isinstance(obs.motion, Static):
            moved.append(obs)
            continue
        old = _shape_at(obs, t0)
        new = _shape_at(obs, t1)
        dx = new.center[0] - old.center[0]
        dy = new.center[1] - old.center[1]
        cx, cy = obs.shape.center
        moved.append(
            Obstacle(replace(obs.shape, center=(cx + dx, cy + dy)), obs.motion)
        )
    return World(world.bounds, tuple(moved), t1)


# -- ray casting -------------------------------------------------------------


def _ray_circle(ox, oy, dx, dy, circle: Circle) -> np.ndarray:
    """Per-beam smallest non-negative ray parameter hitting the circle
    (inf where the beam misses). Beams starting inside get the exit
    crossing, which is what a real sensor stuck inside glass would see."""
    cx, cy = circle.center
    fx, fy = ox - cx, oy - cy
    b = dx * fx + dy * fy
    c = fx * fx + fy * fy - circle.radius**2
    disc = b * b - c
    t = np.full_like(b, np.inf)
    ok = disc >= 0.0
    sq = np.sqrt(np.where(ok, disc, 0.0))
    near = -b - sq
    far = -b + sq
    t = np.where(ok & (near >= 0.0), near, t)
    t = np.where(ok & (near < 0.0) & (far >= 0.0), far, t)
    return t


def _ray_rect(ox, oy, dx, dy, rect: Rect) -> np.ndarray:
    """Slab intersection against an axis-aligned rectangle; same inside /
    miss conventions as _ray_circle."""
    cx, cy = rect.center
    hx, hy = 0.5 * rect.width, 0.5 * rect.height
    with np.errstate(divide="ignore", invalid="ignore"):
        inv_dx = np.where(dx != 0.0, 1.0 / dx, np.inf)
        inv_dy = np.where(dy != 0.0, 1.0 / dy, np.inf)
        tx1 = (cx - hx - ox) * inv_dx
        tx2 = (cx + hx - ox) * inv_dx
        ty1 = (cy - hy - oy) * inv_dy
        ty2 = (cy + hy - oy) * inv_dy
    # a beam parallel to an axis never crosses those faces: its slab range
    # is the whole line when it starts inside the slab, empty otherwise
    in_x = np.abs(ox - cx) <= hx
    in_y = np.abs(oy - cy) <= hy
    tx_lo = np.where(dx != 0.0, np.minimum(tx1, tx2), np.where(in_x, -np.inf, np.inf))
    tx_hi = np.where(dx != 0.0, np.maximum(tx1, tx2), np.where(in_x, np.inf, -np.inf))
    ty_lo = np.where(dy != 0.0, np.minimum(ty1, ty2), np.where(in_y, -np.inf, np.inf))
    ty_hi = np.where(dy != 0.0, np.maximum(ty1, ty2), np.where(in_y, np.inf, -np.inf))
    t_lo = np.maximum(tx_lo, ty_lo)
    t_hi = np.minimum(tx_hi, ty_hi)
    hit = (t_hi >= t_lo) & (t_hi >= 0.0)
    t = np.where(t_lo >= 0.0, t_lo, t_hi)
    return np.where(hit, t, np.inf)


def _bounds_exit(ox, oy, dx, dy, bounds) -> np.ndarray:
    """Distance to the arena wall for beams cast from inside the arena."""
    xmin, ymin, xmax, ymax = bounds
    with np.errstate(divide="ignore", invalid="ignore"):
        tx = np.where(
            dx > 0.0, (xmax - ox) / dx, np.where(dx < 0.0, (xmin - ox) / dx, np.inf)
        )
        ty = np.where(
            dy > 0.0, (ymax - oy) / dy, np.where(dy < 0.0, (ymin - oy) / dy, np.inf)
        )
    return np.maximum(np.minimum(tx, ty), 0.0)


def cast_scan(
    world: World,
    sensor_pose: Pose2D,
    lidar: LidarModel,
    rng_seed: int | None = None,
) -> LaserScan:
    """Simulate one sweep from sensor_pose.

    Ranges are exact nearest intersections with obstacles and the arena
    walls, capped at max_range. Gaussian noise (if configured) is seeded
    explicitly so identical calls produce identical scans.
    """
    angles = lidar.beam_angles()
    world_angles = sensor_pose.theta + angles
    dx = np.cos(world_angles)
    dy = np.sin(world_angles)
    ox, oy = sensor_pose.x, sensor_pose.y

    t = _bounds_exit(ox, oy, dx, dy, world.bounds)
    for obs in world.obstacles:
        shape = obs.shape
        if isinstance(shape, Circle):
            t = np.minimum(t, _ray_circle(ox, oy, dx, dy, shape))
        else:
            t = np.minimum(t, _ray_rect(ox, oy, dx, dy, shape))
    ranges = np.minimum(t, lidar.max_range)

    if lidar.noise_std > 0.0:
        rng = np.random.default_rng(rng_seed)
        ranges = ranges + rng.normal(0.0, lidar.noise_std, size=ranges.shape)
        ranges = np.clip(ranges, 0.0, lidar.max_range)
    return LaserScan(angles=angles, ranges=ranges, max_range=lidar.max_range)


# -- ground-truth geometry ---------------------------------------------------


def _distance_to_shape(p: tuple[float, float], shape: Shape) -> float:
    """Signed distance from a point to the shape boundary (< 0 inside)."""
    if isinstance(shape, Circle):
        return math.hypot(p[0] - shape.center[0], p[1] - shape.center[1]) - shape.radius
    qx = abs(p[0] - shape.center[0]) - 0.5 * shape.width
    qy = abs(p[1] - shape.center[1]) - 0.5 * shape.height
    if qx <= 0.0 and qy <= 0.0:
        return max(qx, qy)
    return math.hypot(max(qx, 0.0), max(qy, 0.0))


def min_obstacle_distance(world: World, p: tuple[float, float]) -> float:
    """Distance from p to the nearest obstacle boundary (negative inside an
    obstacle); the open-world sentinel when there are none. Arena walls do
    not count here."""
    if not world.obstacles:
        return OPEN_WORLD_CLEARANCE
    return min(_distance_to_shape(p, obs.shape) for obs in world.obstacles)


def collides(world: World, pose: Pose2D, footprint_radius: float) -> bool:
    """Footprint disk against obstacles and arena walls; touching counts."""
    xmin, ymin, xmax, ymax = world.bounds
    if (
        pose.x - footprint_radius <= xmin
        or pose.x + footprint_radius >= xmax
        or pose.y - footprint_radius <= ymin
        or pose.y + footprint_radius >= ymax
    ):
        return True
    p = (pose.x, pose.y)
    return any(
        _distance_to_shape(p, obs.shape) <= footprint_radius for obs in world.obstacles
    )
