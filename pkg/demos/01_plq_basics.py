"""
Representing piecewise linear-quadratic functions
=================================================

A univariate PLQ function is stored as an (N+1)x4 matrix: each row
(x_hi, a, b, c) says "the function is a*x^2 + b*x + c up to the breakpoint
x_hi".  The last breakpoint is +inf; an infinite constant marks a domain
wall; a single finite row is the indicator of a point.
"""

import numpy as np

from plqsub import check, domain, eval_grid, is_convex, parse_plq, plq, serialize_plq
from plqsub.extreal import INF

# Build a function directly from rows: x^2/2 left of zero, flat afterwards.
f = plq([(0, 0.5, 0, 0), (INF, 0, 0, 0)])
print("matrix:", f.matrix)

# The same function as text. `inf` / `-inf` spell the infinities.
text = serialize_plq(f)
print("text form:\n" + text)
assert parse_plq(text).matrix == f.matrix

# Evaluate on a sorted grid. Points outside the domain evaluate to +inf.
xs = np.linspace(-2, 2, 9)
print("values:", eval_grid(f, xs))

# A function with a bounded domain: affine on [-2, 1], parabola to its left,
# +inf beyond 1.  The closure convention makes f(1) finite.
g = parse_plq("""
-2  0.16666666666666666  0.3333333333333333  0
 1  0                    1                   2
inf 0                    0                   inf
""")
print("domain:", domain(g))
print("g(1) =", eval_grid(g, [1.0])[0], " g(1.5) =", eval_grid(g, [1.5])[0])

# Integrity checking reports violations as data rather than raising.
report = check([[1, 0, 1, 0], [0, 0, 2, 0], [INF, 0, 0, 0]])
print("violations:", report.violations)

# Convexity: nonnegative curvature, continuity, nondecreasing slopes.
print("f convex?", is_convex(f), " g convex?", is_convex(g))
