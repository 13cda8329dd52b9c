"""Run the three built-in obstacle courses and plot what happened.

Case 1 threads a field of static obstacles, case 2 meets a crossing
obstacle head-on and has to give way, case 3 mixes both. For each case
this script runs the simulator, prints the run summary, and saves a
bird's-eye trajectory plot (path colored by speed) plus the velocity
profile to demos/out/.

Usage: python3 demos/01_built_in_cases.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from matplotlib.patches import Circle as CirclePatch
from matplotlib.patches import Rectangle

from dwanav.report import format_summary, summarize
from dwanav.scenario import builtin_scenario
from dwanav.sim import simulate
from dwanav.world import Circle, ConstantVelocity, Rect, Static

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)


def draw_world(ax, scenario, records):
    ax.add_patch(
        Rectangle((0, 0), scenario.map.width, scenario.map.height,
                  fill=False, lw=1.5, color="black")
    )
    for obs in scenario.obstacles:
        moving = not isinstance(obs.motion, Static)
        color = "tab:gray" if moving else "tab:blue"
        if isinstance(obs.shape, Circle):
            ax.add_patch(CirclePatch(obs.shape.center, obs.shape.radius,
                                     color=color, alpha=0.6))
        elif isinstance(obs.shape, Rect):
            cx, cy = obs.shape.center
            ax.add_patch(Rectangle((cx - obs.shape.width / 2, cy - obs.shape.height / 2),
                                   obs.shape.width, obs.shape.height,
                                   color=color, alpha=0.6))
        if isinstance(obs.motion, ConstantVelocity):
            ax.annotate("", xy=(obs.shape.center[0] + 3 * obs.motion.vx,
                                obs.shape.center[1] + 3 * obs.motion.vy),
                        xytext=obs.shape.center,
                        arrowprops=dict(arrowstyle="->", color="dimgray"))
    xs = [r.pose.x for r in records]
    ys = [r.pose.y for r in records]
    vs = [r.cmd.v for r in records]
    sc = ax.scatter(xs, ys, c=vs, cmap="viridis", s=6, vmin=0.0, vmax=0.6)
    ax.plot(scenario.goal.x, scenario.goal.y, "r*", markersize=14)
    ax.plot(xs[0], ys[0], "ks", markersize=7)
    ax.set_aspect("equal")
    ax.set_xlim(-0.3, scenario.map.width + 0.3)
    ax.set_ylim(-0.3, scenario.map.height + 0.3)
    return sc


for case in (1, 2, 3):
    scenario = builtin_scenario(case)
    result = simulate(scenario)
    summary = summarize(result.records)
    print(f"--- case {case} ---")
    print(format_summary(summary))

    fig, (ax_map, ax_v) = plt.subplots(
        1, 2, figsize=(11, 4.2), gridspec_kw={"width_ratios": [1.4, 1.0]}
    )
    sc = draw_world(ax_map, scenario, result.records)
    fig.colorbar(sc, ax=ax_map, label="v [m/s]")
    ax_map.set_title(f"case {case}: {summary.status.value}")

    t = np.array([r.t for r in result.records])
    v = np.array([r.cmd.v for r in result.records])
    clr = np.array([r.min_clearance for r in result.records])
    ax_v.plot(t, v, label="v [m/s]")
    ax_v.plot(t, np.minimum(clr, 3.0), label="clearance [m] (capped)", alpha=0.7)
    ax_v.axhline(0.6, color="k", ls=":", lw=0.8)
    ax_v.set_xlabel("t [s]")
    ax_v.legend(loc="upper right", fontsize=8)
    ax_v.set_title("velocity and ground-truth clearance")

    fig.tight_layout()
    path = OUT / f"case{case}.png"
    fig.savefig(path, dpi=130)
    plt.close(fig)
    print(f"saved {path}\n")
