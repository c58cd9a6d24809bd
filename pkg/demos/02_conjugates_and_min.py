"""
Conjugates and pointwise minima
===============================

The Legendre-Fenchel conjugate f*(s) = sup_x { s*x - f(x) } of a convex PLQ
function is again PLQ and is computed in one O(N) pass: quadratic pieces map
to quadratic pieces in slope space, kinks map to affine pieces, domain walls
map to affine tails, affine tails map to domain walls.
"""

from plqsub import conjugate, is_equal, plq_min, serialize_plq
from plqsub.gallery import (
    ABS_VALUE,
    ALL_CONVEX,
    BOX_INDICATOR,
    HALF_PARABOLA_FLAT,
    LINE_THEN_PARABOLAS,
)

fc = conjugate(HALF_PARABOLA_FLAT)
print("conjugate of the half-parabola:\n" + serialize_plq(fc))

# The conjugate of a box indicator is the absolute value, and conversely.
print("\nconjugate of the box indicator == |x|:",
      is_equal(conjugate(BOX_INDICATOR), ABS_VALUE))

# Conjugating twice returns the original function (for proper convex input).
for name, f in ALL_CONVEX.items():
    assert is_equal(conjugate(conjugate(f)), f, 1e-8), name
print("biconjugate identity holds on the whole gallery")

# The pointwise minimum of two PLQ matrices is again a PLQ matrix with the
# smallest possible number of rows. It need not be convex, nor continuous.
m = plq_min(fc, plq_min(fc, conjugate(LINE_THEN_PARABOLAS)))
print("\nmin of two conjugates:\n" + serialize_plq(m))

flat = conjugate(HALF_PARABOLA_FLAT)
const_one = plq_min(flat, flat)  # idempotent: min(f, f) = f
assert is_equal(const_one, flat)
