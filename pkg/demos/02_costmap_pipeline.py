"""From simulated lidar sweeps to an inflated occupancy costmap.

A sensor is walked through a small arena; at each stop it takes a 360
degree scan, which is carved into the grid (free space along each beam,
an occupied mark at each hit). Afterwards the obstacle layer is
inflated by the robot radius and the whole thing is written out both as
a portable graymap (the on-disk format the CLI's --grid-dump uses) and
as a PNG. A few clearance queries show how the planner reads the map.

Usage: python3 demos/02_costmap_pipeline.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dwanav.costmap import (
    DEFAULT_MAX_CLEARANCE,
    CellState,
    OccupancyGrid,
    inflate,
    integrate_scan,
    point_clearance,
    write_pgm,
)
from dwanav.kinematics import Pose2D
from dwanav.world import Circle, LidarModel, Obstacle, Rect, World, cast_scan

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

world = World(
    (0.0, 0.0, 8.0, 6.0),
    (
        Obstacle(Circle((5.5, 4.2), 0.5)),
        Obstacle(Circle((2.6, 1.6), 0.35)),
        Obstacle(Rect((4.4, 2.2), 1.2, 0.5)),
    ),
)
lidar = LidarModel(beam_count=240, max_range=6.0)
grid = OccupancyGrid.from_map(8.0, 6.0, 0.05)

stops = [Pose2D(1.0, 3.0, 0.0), Pose2D(3.2, 3.6, -0.7), Pose2D(6.4, 1.2, 2.4)]
for pose in stops:
    grid = integrate_scan(grid, pose, cast_scan(world, pose, lidar))
    n_occ = len(grid.occupied_centers())
    print(f"scan from ({pose.x:.1f}, {pose.y:.1f}): {n_occ} occupied cells so far")

inflated = inflate(grid, 0.25)
pgm_path = OUT / "costmap.pgm"
pgm_path.write_text(write_pgm(inflated))
print(f"wrote {pgm_path}")

for p in [(1.0, 3.0), (4.4, 3.1), (5.5, 3.3)]:
    d = point_clearance(inflated, p)
    tag = " (far from everything)" if d == DEFAULT_MAX_CLEARANCE else ""
    print(f"clearance at {p}: {d:.3f} m{tag}")

# render: unknown dark, free light, inflated ring amber, occupied hits bright
shade = {CellState.UNKNOWN: 0.0, CellState.FREE: 0.25,
         CellState.INFLATED: 0.6, CellState.OCCUPIED: 1.0}
lut = np.zeros(4)
for state, value in shade.items():
    lut[int(state)] = value
display = lut[inflated.cells]

fig, ax = plt.subplots(figsize=(7, 5.2))
ax.imshow(display, origin="lower", extent=(0, 8, 0, 6),
          cmap="inferno", vmin=0.0, vmax=1.0)
for pose in stops:
    ax.plot(pose.x, pose.y, "c^", markersize=9)
ax.set_title("occupancy after three scans (triangles: sensor stops)")
ax.set_aspect("equal")
fig.tight_layout()
png_path = OUT / "costmap.png"
fig.savefig(png_path, dpi=130)
plt.close(fig)
print(f"saved {png_path}")
