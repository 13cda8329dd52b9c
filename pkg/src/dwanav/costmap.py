"""2D occupancy costmap built from laser scans.

Cells are Unknown until observed, carved Free along each beam, marked
Occupied at beam endpoints that returned a hit, and optionally Inflated
around obstacles. Clearance queries measure to Occupied cell centers only;
Inflated cells never enter the distance math (the robot footprint is
subtracted at query time instead, so the margin is not counted twice).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .kinematics import Pose2D, Trajectory

#: Clearance reported when the grid holds no obstacle information at all.
DEFAULT_MAX_CLEARANCE = 10.0

# Traversal stops once the segment parameter passes 1 by less than this;
# shared by the scalar and batched ray walkers so they agree cell-for-cell.
_RAY_T_EPS = 1e-12


class CellState(IntEnum):
    UNKNOWN = 0
    FREE = 1
    OCCUPIED = 2
    INFLATED = 3


# Cell state -> ASCII PGM sample value (and back).
PGM_VALUES = {
    CellState.FREE: 0,
    CellState.OCCUPIED: 255,
    CellState.INFLATED: 200,
    CellState.UNKNOWN: 128,
}
_PGM_LUT = np.zeros(4, dtype=np.int64)
for _state, _value in PGM_VALUES.items():
    _PGM_LUT[int(_state)] = _value
_PGM_TO_STATE = {value: state for state, value in PGM_VALUES.items()}


class GridBoundsError(ValueError):
    """A queried point or sensor position falls outside the grid."""


@dataclass
class LaserScan:
    """One sweep of range measurements in the sensor frame.

    angles and ranges are parallel arrays; a range equal to max_range means
    the beam returned nothing (no-hit convention).
    """

    angles: np.ndarray
    ranges: np.ndarray
    max_range: float

    def __post_init__(self):
        self.angles = np.asarray(self.angles, dtype=float)
        self.ranges = np.asarray(self.ranges, dtype=float)
        if self.angles.ndim != 1 or self.angles.shape != self.ranges.shape:
            raise ValueError("angles and ranges must be 1-D arrays of equal length")
        if self.angles.size < 1:
            raise ValueError("a scan needs at least one beam")
        if self.max_range <= 0.0:
            raise ValueError(f"max_range must be > 0, got {self.max_range}")
        if np.any(self.ranges < 0.0) or np.any(self.ranges > self.max_range):
            raise ValueError("ranges must lie in [0, max_range]")


@dataclass(eq=False)
class OccupancyGrid:
    """Row-major cell lattice; cell (ix, iy) spans a resolution-sized square.

    origin is the world position of the outer corner of cell (0, 0); the
    cells array is indexed [iy, ix]. Treat a grid as frozen once it has been
    handed to a planner: mutate through mark_cell (which invalidates the
    cached nearest-obstacle index) or build a new grid.
    """

    width_cells: int
    height_cells: int
    resolution: float
    origin: tuple[float, float] = (0.0, 0.0)
    cells: np.ndarray | None = None
    _stamp: int = field(default=0, repr=False)
    _tree: cKDTree | None = field(default=None, repr=False)
    _tree_stamp: int = field(default=-1, repr=False)

    def __post_init__(self):
        if self.resolution <= 0.0:
            raise ValueError(f"resolution must be > 0, got {self.resolution}")
        if self.width_cells < 1 or self.height_cells < 1:
            raise ValueError("grid must be at least 1x1 cells")
        if self.cells is None:
            self.cells = np.full(
                (self.height_cells, self.width_cells), int(CellState.UNKNOWN), dtype=np.uint8
            )
        else:
            self.cells = np.asarray(self.cells, dtype=np.uint8)
            if self.cells.shape != (self.height_cells, self.width_cells):
                raise ValueError("cells array shape does not match grid dimensions")

    @classmethod
    def from_map(
        cls,
        width_m: float,
        height_m: float,
        resolution: float,
        origin: tuple[float, float] = (0.0, 0.0),
    ) -> "OccupancyGrid":
        """Grid covering a width_m x height_m area starting at origin."""
        if width_m <= 0.0 or height_m <= 0.0:
            raise ValueError("map extent must be positive")
        w = math.ceil((width_m / resolution) * (1.0 - 1e-12))
        h = math.ceil((height_m / resolution) * (1.0 - 1e-12))
        return cls(w, h, resolution, origin)

    # -- coordinates ---------------------------------------------------------

    def world_to_cell(self, x: float, y: float) -> tuple[int, int]:
        return (
            math.floor((x - self.origin[0]) / self.resolution),
            math.floor((y - self.origin[1]) / self.resolution),
        )

    def cell_center(self, ix: int, iy: int) -> tuple[float, float]:
        return (
            self.origin[0] + (ix + 0.5) * self.resolution,
            self.origin[1] + (iy + 0.5) * self.resolution,
        )

    def contains_cell(self, ix: int, iy: int) -> bool:
        return 0 <= ix < self.width_cells and 0 <= iy < self.height_cells

    def contains_point(self, x: float, y: float) -> bool:
        return self.contains_cell(*self.world_to_cell(x, y))

    # -- cell access ---------------------------------------------------------

    def state_at(self, ix: int, iy: int) -> CellState:
        if not self.contains_cell(ix, iy):
            raise GridBoundsError(f"cell ({ix}, {iy}) outside {self.width_cells}x{self.height_cells} grid")
        return CellState(self.cells[iy, ix])

    def mark_cell(self, ix: int, iy: int, state: CellState) -> None:
        if not self.contains_cell(ix, iy):
            raise GridBoundsError(f"cell ({ix}, {iy}) outside {self.width_cells}x{self.height_cells} grid")
        self.cells[iy, ix] = int(state)
        self._stamp += 1

    def occupied_mask(self) -> np.ndarray:
        return self.cells == int(CellState.OCCUPIED)

    def occupied_centers(self) -> np.ndarray:
        """(N, 2) world coordinates of every Occupied cell center."""
        iy, ix = np.nonzero(self.occupied_mask())
        centers = np.empty((ix.size, 2), dtype=float)
        centers[:, 0] = self.origin[0] + (ix + 0.5) * self.resolution
        centers[:, 1] = self.origin[1] + (iy + 0.5) * self.resolution
        return centers

    def copy(self) -> "OccupancyGrid":
        return OccupancyGrid(
            self.width_cells, self.height_cells, self.resolution, self.origin, self.cells.copy()
        )

    def _occupied_tree(self) -> cKDTree | None:
        """Cached nearest-neighbour index over occupied centers (None if empty)."""
        if self._tree_stamp != self._stamp:
            centers = self.occupied_centers()
            self._tree = cKDTree(centers) if centers.size else None
            self._tree_stamp = self._stamp
        return self._tree


# -- ray traversal -----------------------------------------------------------


def ray_cells(grid: OccupancyGrid, start: tuple[float, float], end: tuple[float, float]) -> list[tuple[int, int]]:
    """Cells crossed by the segment from start to end, in order.

    Amanatides-Woo traversal on continuous coordinates: includes the start
    cell and the endpoint cell, stops early if the segment leaves the grid.
    The start point must be inside the grid.
    """
    res = grid.resolution
    u0 = (start[0] - grid.origin[0]) / res
    v0 = (start[1] - grid.origin[1]) / res
    u1 = (end[0] - grid.origin[0]) / res
    v1 = (end[1] - grid.origin[1]) / res
    i, j = math.floor(u0), math.floor(v0)
    if not grid.contains_cell(i, j):
        raise GridBoundsError(f"ray start {start} outside the grid")
    ie, je = math.floor(u1), math.floor(v1)

    du = u1 - u0
    dv = v1 - v0
    step_i = 1 if du > 0 else (-1 if du < 0 else 0)
    step_j = 1 if dv > 0 else (-1 if dv < 0 else 0)
    t_dx = abs(1.0 / du) if du != 0.0 else math.inf
    t_dy = abs(1.0 / dv) if dv != 0.0 else math.inf
    if du > 0:
        tmx = (math.floor(u0) + 1.0 - u0) * t_dx
    elif du < 0:
        tmx = (u0 - math.floor(u0)) * t_dx
    else:
        tmx = math.inf
    if dv > 0:
        tmy = (math.floor(v0) + 1.0 - v0) * t_dy
    elif dv < 0:
        tmy = (v0 - math.floor(v0)) * t_dy
    else:
        tmy = math.inf

    cells = []
    max_iter = grid.width_cells + grid.height_cells + 4
    for _ in range(max_iter):
        cells.append((i, j))
        if (i == ie and j == je) or min(tmx, tmy) >= 1.0 - _RAY_T_EPS:
            break
        if tmx <= tmy:
            i += step_i
            tmx += t_dx
        else:
            j += step_j
            tmy += t_dy
        if not grid.contains_cell(i, j):
            break
    return cells


def _ray_cells_batch(
    grid: OccupancyGrid,
    start: tuple[float, float],
    end_x: np.ndarray,
    end_y: np.ndarray,
) -> np.ndarray:
    """Flat cell indices touched by segments from one start to many ends.

    Vectorized mirror of ray_cells (identical stepping and stop conditions);
    every ray advances one cell per iteration until it finishes.
    """
    res = grid.resolution
    w, h = grid.width_cells, grid.height_cells
    u0 = (start[0] - grid.origin[0]) / res
    v0 = (start[1] - grid.origin[1]) / res
    u1 = (np.asarray(end_x, dtype=float) - grid.origin[0]) / res
    v1 = (np.asarray(end_y, dtype=float) - grid.origin[1]) / res
    n = u1.size

    i = np.full(n, math.floor(u0), dtype=np.int64)
    j = np.full(n, math.floor(v0), dtype=np.int64)
    ie = np.floor(u1).astype(np.int64)
    je = np.floor(v1).astype(np.int64)
    du = u1 - u0
    dv = v1 - v0
    step_i = np.sign(du).astype(np.int64)
    step_j = np.sign(dv).astype(np.int64)
    with np.errstate(divide="ignore"):
        t_dx = np.where(du != 0.0, np.abs(1.0 / du), np.inf)
        t_dy = np.where(dv != 0.0, np.abs(1.0 / dv), np.inf)
    frac_u = u0 - math.floor(u0)
    frac_v = v0 - math.floor(v0)
    with np.errstate(invalid="ignore"):
        tmx = np.where(du > 0, (1.0 - frac_u) * t_dx, np.where(du < 0, frac_u * t_dx, np.inf))
        tmy = np.where(dv > 0, (1.0 - frac_v) * t_dy, np.where(dv < 0, frac_v * t_dy, np.inf))
    tmx = np.where(np.isnan(tmx), np.inf, tmx)
    tmy = np.where(np.isnan(tmy), np.inf, tmy)

    active = np.ones(n, dtype=bool)
    chunks = []
    max_iter = w + h + 4
    for _ in range(max_iter):
        if not active.any():
            break
        chunks.append(j[active] * w + i[active])
        done = active & (
            ((i == ie) & (j == je)) | (np.minimum(tmx, tmy) >= 1.0 - _RAY_T_EPS)
        )
        active = active & ~done
        take_x = active & (tmx <= tmy)
        take_y = active & ~take_x
        i = np.where(take_x, i + step_i, i)
        tmx = np.where(take_x, tmx + t_dx, tmx)
        j = np.where(take_y, j + step_j, j)
        tmy = np.where(take_y, tmy + t_dy, tmy)
        active = active & (i >= 0) & (i < w) & (j >= 0) & (j < h)
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


# -- scan integration and inflation ------------------------------------------


def integrate_scan(grid: OccupancyGrid, sensor_pose: Pose2D, scan: LaserScan) -> OccupancyGrid:
    """Carve a scan into a copy of the grid and return it.

    Cells along each beam become Free; endpoint cells of beams that hit
    (range < max_range) become Occupied. Within one scan Occupied beats
    Free, and fresh Free carving overwrites stale Occupied marks from
    earlier scans, which is what clears out moving obstacles.
    """
    if not grid.contains_point(sensor_pose.x, sensor_pose.y):
        raise GridBoundsError(
            f"sensor at ({sensor_pose.x}, {sensor_pose.y}) outside the grid"
        )
    angles = sensor_pose.theta + scan.angles
    end_x = sensor_pose.x + scan.ranges * np.cos(angles)
    end_y = sensor_pose.y + scan.ranges * np.sin(angles)

    free_flat = _ray_cells_batch(grid, (sensor_pose.x, sensor_pose.y), end_x, end_y)

    hit = scan.ranges < scan.max_range
    # Pull each hit endpoint a hair back toward the sensor before the cell
    # lookup: a beam ending exactly on the map boundary (an arena wall) then
    # lands in the edge cell instead of flooring out of bounds, so walls are
    # visible as obstacles on all four sides.
    shrink = 1.0 - 1e-9
    mx = sensor_pose.x + (end_x[hit] - sensor_pose.x) * shrink
    my = sensor_pose.y + (end_y[hit] - sensor_pose.y) * shrink
    hx = np.floor((mx - grid.origin[0]) / grid.resolution).astype(np.int64)
    hy = np.floor((my - grid.origin[1]) / grid.resolution).astype(np.int64)
    inb = (hx >= 0) & (hx < grid.width_cells) & (hy >= 0) & (hy < grid.height_cells)
    occ_flat = hy[inb] * grid.width_cells + hx[inb]

    out = grid.copy()
    flat = out.cells.reshape(-1)
    flat[free_flat] = int(CellState.FREE)
    flat[occ_flat] = int(CellState.OCCUPIED)
    return out


def inflate(grid: OccupancyGrid, inflation_radius: float) -> OccupancyGrid:
    """Mark every cell whose center is within inflation_radius of an Occupied
    cell center as Inflated (Occupied cells themselves are untouched).

    The inflation layer is recomputed from scratch: Inflated marks from a
    previous pass revert to Free first, so repeated calls are idempotent.
    """
    if inflation_radius < 0.0:
        raise ValueError(f"inflation_radius must be >= 0, got {inflation_radius}")
    out = grid.copy()
    cells = out.cells
    cells[cells == int(CellState.INFLATED)] = int(CellState.FREE)
    occ = cells == int(CellState.OCCUPIED)
    if inflation_radius == 0.0 or not occ.any():
        return out
    reach = int(math.floor(inflation_radius / grid.resolution)) + 1
    dy, dx = np.mgrid[-reach : reach + 1, -reach : reach + 1]
    structure = grid.resolution * np.hypot(dx, dy) <= inflation_radius
    near = ndimage.binary_dilation(occ, structure=structure)
    cells[near & ~occ] = int(CellState.INFLATED)
    return out


# -- clearance queries -------------------------------------------------------


def point_clearance(
    grid: OccupancyGrid, p: tuple[float, float], d_max_clearance: float = DEFAULT_MAX_CLEARANCE
) -> float:
    """Euclidean distance from p to the nearest Occupied cell center.

    Returns the d_max_clearance sentinel when the grid has no Occupied cell.
    Inflated cells are not obstacles here (footprint handling subtracts the
    robot radius separately).
    """
    if not grid.contains_point(p[0], p[1]):
        raise GridBoundsError(f"point {p} outside the grid")
    tree = grid._occupied_tree()
    if tree is None:
        return d_max_clearance
    d, _ = tree.query([p[0], p[1]])
    return float(d)


def trajectory_clearance(
    grid: OccupancyGrid,
    traj: Trajectory,
    footprint_radius: float,
    d_max_clearance: float = DEFAULT_MAX_CLEARANCE,
) -> float:
    """Worst footprint-adjusted clearance along a trajectory, in [0, d_max].

    This is the dist term the planner consumes: min over poses of
    max(0, point_clearance - footprint_radius). A pose outside the grid
    counts as clearance 0 (the map edge is unknown danger), and a grid with
    no obstacle information at all reports the sentinel.
    """
    pts = traj.positions()
    u = (pts[:, 0] - grid.origin[0]) / grid.resolution
    v = (pts[:, 1] - grid.origin[1]) / grid.resolution
    in_bounds = (u >= 0) & (u < grid.width_cells) & (v >= 0) & (v < grid.height_cells)
    if not in_bounds.all():
        return 0.0
    tree = grid._occupied_tree()
    if tree is None:
        return d_max_clearance
    d, _ = tree.query(pts)
    worst = float(np.min(np.maximum(0.0, d - footprint_radius)))
    return min(worst, d_max_clearance)


# -- PGM serialization -------------------------------------------------------


def write_pgm(grid: OccupancyGrid) -> str:
    """ASCII PGM (P2) dump: row 0 is the top of the map (max y).

    Sample values: 0 Free, 255 Occupied, 200 Inflated, 128 Unknown. The
    header comment records resolution and origin so the dump is self
    describing.
    """
    values = _PGM_LUT[grid.cells]
    lines = [
        "P2",
        f"# resolution {grid.resolution!r} origin {grid.origin[0]!r} {grid.origin[1]!r}",
        f"{grid.width_cells} {grid.height_cells}",
        "255",
    ]
    for row in values[::-1]:
        lines.append(" ".join(str(int(s)) for s in row))
    return "\n".join(lines) + "\n"


def parse_pgm(text: str) -> OccupancyGrid:
    """Rebuild a grid from a write_pgm dump."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != "P2":
        raise ValueError("not an ASCII PGM (P2) document")
    meta = lines[1].split()
    if len(meta) != 6 or meta[0] != "#" or meta[1] != "resolution" or meta[3] != "origin":
        raise ValueError("missing resolution/origin header comment")
    resolution = float(meta[2])
    origin = (float(meta[4]), float(meta[5]))
    width, height = (int(tok) for tok in lines[2].split())
    samples = [int(tok) for row in lines[4:] for tok in row.split()]
    if len(samples) != width * height:
        raise ValueError(f"expected {width * height} samples, got {len(samples)}")
    try:
        states = [int(_PGM_TO_STATE[s]) for s in samples]
    except KeyError as exc:
        raise ValueError(f"unknown sample value {exc.args[0]}") from None
    cells = np.array(states, dtype=np.uint8).reshape(height, width)[::-1]
    return OccupancyGrid(width, height, resolution, origin, cells.copy())
