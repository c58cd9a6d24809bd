"""
Computing ε-subdifferentials
============================

An ε-subgradient of f at x̄ is any slope s with

    f(y) >= f(x̄) + s (y - x̄) - ε   for all y.

For convex univariate PLQ functions the set of all such slopes is a closed
interval, computed here in O(N): it is exactly the slope set where the
conjugate f* lies below the affine function l(s) = ε - f(x̄) + x̄ s, so it
can be read off the pointwise minimum min(f*, l).  The dual "coincidence
segment" and the primal support lines drawn below make this visible.
"""

from pathlib import Path

from plqsub import EpsQuery, eps_subdifferential, oracle_eps_interval, subdifferential
from plqsub.gallery import HALF_PARABOLA_FLAT, LINE_THEN_PARABOLAS
from plqsub.viz import export, render_views

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# The flagship example: f(x) = x^2/2 for x < 0, 0 afterwards, at x̄=0, ε=1.
res = eps_subdifferential(HALF_PARABOLA_FLAT, EpsQuery(0.0, 1.0))
print("∂₁f(0) =", res.interval)            # [-sqrt(2), 0]
print("conjugate rows:", res.f_conj.matrix)
print("min(f*, l) rows:", res.m.matrix)

# The exact subdifferential is always contained in the ε-enlargement.
print("∂f(0)  =", subdifferential(HALF_PARABOLA_FLAT, 0.0))

# A kinked three-piece function at two query points.
for x in (-1.0, 0.5):
    r = eps_subdifferential(LINE_THEN_PARABOLAS, EpsQuery(x, 1.0))
    print(f"three-piece function at x̄={x}: {r.interval}")

# The brute-force oracle searches the defining inequality directly and
# agrees with the fast path to bisection accuracy.
print("oracle:", oracle_eps_interval(LINE_THEN_PARABOLAS, EpsQuery(0.5, 1.0)))

# Render the primal / dual / subdifferential views as deterministic SVG.
for name, f, x in (
    ("halfquad_views.svg", HALF_PARABOLA_FLAT, 0.0),
    ("threepiece_views_m1.svg", LINE_THEN_PARABOLAS, -1.0),
    ("threepiece_views_05.svg", LINE_THEN_PARABOLAS, 0.5),
):
    bundle = render_views(f, EpsQuery(x, 1.0))
    print("wrote", export(bundle, "svg", OUT / name))
