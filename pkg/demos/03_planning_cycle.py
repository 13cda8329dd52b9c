"""Anatomy of a single planning cycle.

The planner works a lattice of (v, omega) candidates clipped to what the
motors can reach within one control interval. Every candidate is rolled
out along its constant-command arc, scored on goal heading, obstacle
clearance, and raw speed, and filtered by the braking rule: a command is
only admissible if the robot could still stop (and stop turning) within
the clearance its own rollout leaves. This script freezes one such cycle
in front of a wall gap and renders the whole candidate lattice.

Usage: python3 demos/03_planning_cycle.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dwanav.costmap import CellState, OccupancyGrid
from dwanav.kinematics import Pose2D, VelocityCommand
from dwanav.planner import PlanContext, PlannerParams, RobotLimits, plan_result

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# a wall across the arena with a one-meter gap, robot approaching it
grid = OccupancyGrid.from_map(6.0, 6.0, 0.05)
for iy in range(grid.height_cells):
    y = grid.cell_center(0, iy)[1]
    if abs(y - 3.4) > 0.5:  # the gap
        grid.mark_cell(int(3.0 / 0.05), iy, CellState.OCCUPIED)

ctx = PlanContext(
    current_pose=Pose2D(1.2, 2.6, 0.3),
    current_cmd=VelocityCommand(0.45, 0.0),
    goal=(5.4, 3.6),
    grid=grid,
    footprint_radius=0.25,
    limits=RobotLimits(),
    params=PlannerParams(alpha=0.85, beta=0.15, gamma=0.1),
)
res = plan_result(ctx)

print(f"window: v in [{res.window.v_lo:.2f}, {res.window.v_hi:.2f}], "
      f"omega in [{res.window.omega_lo:.2f}, {res.window.omega_hi:.2f}]")
print(f"candidates: {len(res.candidates)} "
      f"({sum(c.admissible for c in res.candidates)} admissible)")
print(f"chosen: v={res.command.v:.3f} omega={res.command.omega:.3f} "
      f"g={res.best.g:.3f} (dist={res.best.dist:.2f} m)")

fig, (ax_vw, ax_map) = plt.subplots(1, 2, figsize=(11.5, 4.6))

# left: the sampled window, g as color, inadmissible candidates hollow
vs = [c.command.v for c in res.candidates]
ws = [c.command.omega for c in res.candidates]
gs = [c.g for c in res.candidates]
adm = np.array([c.admissible for c in res.candidates])
pts = ax_vw.scatter(np.array(ws)[adm], np.array(vs)[adm],
                    c=np.array(gs)[adm], cmap="viridis", s=55)
ax_vw.scatter(np.array(ws)[~adm], np.array(vs)[~adm],
              facecolors="none", edgecolors="tab:red", s=55,
              label="inadmissible (cannot brake in time)")
ax_vw.plot(res.command.omega, res.command.v, "k*", markersize=16, label="chosen")
fig.colorbar(pts, ax=ax_vw, label="objective g")
ax_vw.set_xlabel("omega [rad/s]")
ax_vw.set_ylabel("v [m/s]")
ax_vw.set_title("one dynamic window, scored")
ax_vw.legend(loc="lower left", fontsize=8)

# right: every rollout in the world, the chosen one emphasized
occ = grid.occupied_centers()
ax_map.plot(occ[:, 0], occ[:, 1], "ks", markersize=2)
for c in res.candidates:
    xs = [p.x for p in c.trajectory.poses]
    ys = [p.y for p in c.trajectory.poses]
    if c.admissible:
        ax_map.plot(xs, ys, color="tab:blue", alpha=0.25, lw=0.8)
    else:
        ax_map.plot(xs, ys, color="tab:red", alpha=0.18, lw=0.8)
best_xy = [(p.x, p.y) for p in res.best.trajectory.poses]
ax_map.plot(*zip(*best_xy), color="black", lw=2.2, label="chosen rollout")
ax_map.plot(*ctx.goal, "r*", markersize=14)
ax_map.plot(ctx.current_pose.x, ctx.current_pose.y, "ko", markersize=6)
ax_map.set_aspect("equal")
ax_map.set_xlim(0, 6)
ax_map.set_ylim(0, 6)
ax_map.set_title("rollouts toward the wall gap")
ax_map.legend(loc="lower right", fontsize=8)

fig.tight_layout()
path = OUT / "planning_cycle.png"
fig.savefig(path, dpi=130)
plt.close(fig)
print(f"saved {path}")
