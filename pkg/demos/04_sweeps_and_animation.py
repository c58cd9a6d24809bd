"""
Sweeping the multifunction and writing animation frames
=======================================================

The interval endpoints of x ↦ ∂_ε f(x) form two monotone curves; sweeping ε
at a fixed point yields nested intervals shrinking to the exact
subdifferential.  One conjugate is computed per sweep and reused across the
whole grid, so a 100-point sweep takes milliseconds.
"""

import time
from pathlib import Path

import numpy as np

from plqsub import graph_to_csv, sweep_eps, sweep_x
from plqsub.gallery import LEFT_WALL_MIXED, RIGHT_WALL_AFFINE
from plqsub.viz import animate

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# x-sweep over a function whose domain starts at -6: grid points left of the
# wall are skipped and reported, not errors.
t0 = time.perf_counter()
g = sweep_x(LEFT_WALL_MIXED, 1.0, list(np.linspace(-8, 4.5, 100)))
print(f"x-sweep: {len(g.samples)} samples, {len(g.skipped)} skipped, "
      f"{(time.perf_counter() - t0) * 1e3:.1f} ms")
(OUT / "xsweep.csv").write_text(graph_to_csv(g))
print("first rows of the CSV:")
print("\n".join(graph_to_csv(g).splitlines()[:4]))

# ε-sweep at x̄ = -1: intervals are nested and shrink to ∂f(-1) = {1}.
g2 = sweep_eps(RIGHT_WALL_AFFINE, -1.0, list(np.linspace(0.1, 3.0, 50)))
print("\nε-sweep endpoints at the smallest and largest ε:")
print("  ε=0.1:", g2.samples[0][1:], "  ε=3.0:", g2.samples[-1][1:])

# Animation: one SVG frame per grid point, axes shared across frames.
frames = animate(
    LEFT_WALL_MIXED,
    axis="x",
    grid=list(np.linspace(-5, 4.5, 50)),
    eps=1.0,
    out_dir=OUT / "frames_x",
)
print(f"\nwrote {len(frames)} x-animation frames to {frames[0].parent}")

frames = animate(
    RIGHT_WALL_AFFINE,
    axis="eps",
    grid=list(np.linspace(0.1, 3.0, 50)),
    x_bar=-1.0,
    out_dir=OUT / "frames_eps",
)
print(f"wrote {len(frames)} ε-animation frames to {frames[0].parent}")
