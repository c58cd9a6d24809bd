"""A small gallery of PLQ functions used by the demos and tests.

Each entry is a valid convex function unless noted; names describe the shape.
"""

from __future__ import annotations

from .core import PlqFunction, plq
from .extreal import INF

#: x^2/2 for x < 0, identically 0 afterwards.
HALF_PARABOLA_FLAT = plq([(0, 0.5, 0, 0), (INF, 0, 0, 0)])

#: Steep descending line, then two parabolas of increasing curvature:
#: -7x - 5 | x^2 - x | 2x^2 - 3x + 1, kink only at x = -1.
LINE_THEN_PARABOLAS = plq([(-1, 0, -7, -5), (1, 1, -1, 0), (INF, 2, -3, 1)])

#: Domain [-6, +inf): wall, affine drop, parabola, affine rise, flat parabola.
LEFT_WALL_MIXED = plq(
    [(-6, 0, 0, INF), (0, 0, -2, 0), (2, 1, -2, 0), (3, 0, 2, -4), (INF, 1 / 3, 0, -1)]
)

#: Domain (-inf, 1]: parabola then affine rise into a wall.
RIGHT_WALL_AFFINE = plq([(-2, 1 / 6, 1 / 3, 0), (1, 0, 1, 2), (INF, 0, 0, INF)])

#: Parabola, long shallow affine stretch, parabola: x^2/3 | x/2 + 7/3 | x^2 - 8/3.
PARABOLA_VALLEY_PARABOLA = plq([(-2, 1 / 3, 0, 0), (2.5, 0, 0.5, 7 / 3), (INF, 1, 0, -8 / 3)])

#: |x|.
ABS_VALUE = plq([(0, 0, -1, 0), (INF, 0, 1, 0)])

#: Indicator of [-1, 1].
BOX_INDICATOR = plq([(-1, 0, 0, INF), (1, 0, 0, 0), (INF, 0, 0, INF)])

#: x^2/2 on all of R.
UNIT_PARABOLA = plq([(INF, 0.5, 0, 0)])

#: The affine function 2x + 3.
AFFINE_LINE = plq([(INF, 0, 2, 3)])

#: Indicator of the point 0.
POINT_INDICATOR = plq([(0, 0, 0, 0)])

#: Nonconvex: pointwise minimum of BOX_INDICATOR and the identity line,
#: discontinuous at x = 1.
MIN_BOX_IDENTITY = plq([(0, 0, 1, 0), (1, 0, 0, 0), (INF, 0, 1, 0)])

ALL_CONVEX: dict[str, PlqFunction] = {
    "half_parabola_flat": HALF_PARABOLA_FLAT,
    "line_then_parabolas": LINE_THEN_PARABOLAS,
    "left_wall_mixed": LEFT_WALL_MIXED,
    "right_wall_affine": RIGHT_WALL_AFFINE,
    "parabola_valley_parabola": PARABOLA_VALLEY_PARABOLA,
    "abs_value": ABS_VALUE,
    "box_indicator": BOX_INDICATOR,
    "unit_parabola": UNIT_PARABOLA,
    "affine_line": AFFINE_LINE,
    "point_indicator": POINT_INDICATOR,
}
