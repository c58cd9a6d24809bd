"""Convex transforms on PLQ functions.

* :func:`conjugate` -- the Legendre-Fenchel transform ``f*(s) = sup_x {sx - f(x)}``,
  assembled in a single left-to-right pass over slope space, O(N).
* :func:`plq_min` -- the pointwise minimum of two PLQ matrices, O(N1 + N2),
  emitting the smallest matrix representation.
* :func:`subdifferential` -- the exact subdifferential interval from one-sided
  slopes.

For a convex PLQ function the conjugate is again PLQ.  Each positive-curvature
piece of ``f`` on [x_lo, x_hi] contributes the quadratic

    s^2/(4a) - (b/(2a)) s + (b^2/(4a) - c)

on the slope interval [2a x_lo + b, 2a x_hi + b]; each kink at x with slope
jump [g-, g+] contributes the linear piece ``x s - f(x)`` on [g-, g+]; a
finite domain wall with finite value contributes an unbounded linear tail of
slope equal to the wall abscissa; and an unbounded affine tail of ``f`` bounds
the domain of ``f*`` on that side.  Affine f yields a needle, a needle yields
an affine function.
"""

from __future__ import annotations

import math

from .core import PlqFunction, PlqPiece, canonical_form, eval_at, is_convex
from .errors import MSG_NOT_CONVEX, NotConvexError
from .extreal import DEFAULT_TOL, INF, NINF, is_finite
from .interval import Interval


def _slope_gap(lo: float, hi: float, tol: float) -> bool:
    """True if the slope interval [lo, hi] has meaningful width."""
    return hi - lo > tol + tol * max(abs(lo), abs(hi))


def _conj_quad(p: PlqPiece) -> tuple[float, float, float]:
    """Conjugate coefficients contributed by a positive-curvature piece."""
    inv = 1.0 / (4.0 * p.a)
    return inv, -p.b / (2.0 * p.a), p.b * p.b * inv - p.c


def conjugate(f: PlqFunction, tol: float = DEFAULT_TOL) -> PlqFunction:
    """Legendre-Fenchel conjugate of a proper convex PLQ function.

    Returns the canonical (minimal-row) matrix of ``f*`` in O(N) time.
    Raises :class:`NotConvexError` for nonconvex input and ``ValueError`` for
    an improper (identically +inf) one.
    """
    if not is_convex(f, tol):
        raise NotConvexError(MSG_NOT_CONVEX)
    # collapse redundant rows so a split affine function reaches the
    # single-row branch instead of masquerading as kinked
    pieces = canonical_form(f).pieces
    if all(p.c == INF for p in pieces):
        raise ValueError("cannot conjugate an improper (identically +inf) function")

    if len(pieces) == 1:
        p = pieces[0]
        if is_finite(p.x_hi):  # needle at x0 -> affine s*x0 - c
            return PlqFunction((PlqPiece(INF, 0.0, p.x_hi, -p.c),))
        if p.a > 0.0:  # global quadratic -> global quadratic
            qa, qb, qc = _conj_quad(p)
            return PlqFunction((PlqPiece(INF, qa, qb, qc),))
        # global affine -> needle at its slope
        return PlqFunction((PlqPiece(p.b, 0.0, 0.0, -p.c),))

    rows: list[PlqPiece] = []

    first = pieces[0]
    if first.c == INF:
        # bounded domain on the left: linear tail of slope x0 up to the
        # right-sided slope at the wall
        x0 = first.x_hi
        nxt = pieces[1]
        rows.append(PlqPiece(nxt.slope(x0), 0.0, x0, -nxt.value(x0)))
    elif first.a > 0.0:
        qa, qb, qc = _conj_quad(first)
        rows.append(PlqPiece(2.0 * first.a * first.x_hi + first.b, qa, qb, qc))
    else:
        # unbounded affine tail of f: f* is +inf below its slope
        rows.append(PlqPiece(first.b, 0.0, 0.0, INF))

    for i in range(1, len(pieces)):
        left, right = pieces[i - 1], pieces[i]
        xb = left.x_hi
        if left.c != INF and right.c != INF:
            g_minus, g_plus = left.slope(xb), right.slope(xb)
            if _slope_gap(g_minus, g_plus, tol):
                rows.append(PlqPiece(g_plus, 0.0, xb, -left.value(xb)))
        if right.c != INF and right.a > 0.0:
            s_hi = INF if right.x_hi == INF else right.slope(right.x_hi)
            qa, qb, qc = _conj_quad(right)
            rows.append(PlqPiece(s_hi, qa, qb, qc))

    last = pieces[-1]
    if last.c == INF:
        # bounded domain on the right: linear tail of slope x_{N-1}
        xr = pieces[-2].x_hi
        rows.append(PlqPiece(INF, 0.0, xr, -pieces[-2].value(xr)))
    elif last.a == 0.0:
        rows.append(PlqPiece(INF, 0.0, 0.0, INF))

    return canonical_form(PlqFunction(tuple(rows)))


# ---------------------------------------------------------------------------
# pointwise minimum


def _quad_roots(da: float, db: float, dc: float, tol: float) -> tuple[float, ...]:
    """Real roots of ``da x^2 + db x + dc`` ascending; tangency yields none.

    Uses the cancellation-stable form: the larger-magnitude root comes from
    the quadratic formula, the other from the root product.
    """
    if da == 0.0:
        if db == 0.0:
            return ()
        return (-dc / db,)
    disc = db * db - 4.0 * da * dc
    scale = max(db * db, abs(4.0 * da * dc), 1.0)
    if disc <= tol * scale:
        return ()  # tangent or no crossing: no sign change
    sq = math.sqrt(disc)
    if db == 0.0:
        r = sq / (2.0 * da)
        return (min(-r, r), max(-r, r))
    q = -0.5 * (db + math.copysign(sq, db))
    r1, r2 = q / da, dc / q
    return (r1, r2) if r1 < r2 else (r2, r1)


def _rep_point(lo: float, hi: float) -> float:
    """A point strictly inside (lo, hi] usable to sample the lower function."""
    if lo == NINF and hi == INF:
        return 0.0
    if lo == NINF:
        return hi - 1.0
    if hi == INF:
        return lo + 1.0
    return 0.5 * (lo + hi)


def _strictly_inside(r: float, lo: float, hi: float, tol: float) -> bool:
    pad = tol + tol * abs(r)
    return r > lo + pad and r < hi - pad


def plq_min(f: PlqFunction, g: PlqFunction, tol: float = DEFAULT_TOL) -> PlqFunction:
    """Pointwise minimum of two PLQ functions as a minimal PLQ matrix.

    Convexity is not required and the output need not be convex, nor even
    continuous; at a discontinuity abscissa the stored value follows the
    breakpoint convention of the data model.  Merges the two breakpoint
    sequences and splits each merged interval at the (up to two) intersection
    abscissae of the competing quadratics, so the whole run is O(N1 + N2).

    Raises ``ValueError`` for the rare minima the matrix format cannot
    represent (a needle dipping below the other function, needles at distinct
    points): such results would need a punctured or disconnected domain.
    """
    if f.is_needle or g.is_needle:
        return _min_with_needle(f, g, tol)

    fp, gp = f.pieces, g.pieces
    rows: list[PlqPiece] = []
    fi = gi = 0
    prev = NINF
    while True:
        pf, pg = fp[fi], gp[gi]
        cur = min(pf.x_hi, pg.x_hi)
        _emit_lower(rows, pf, pg, prev, cur, tol)
        if cur == INF:
            break
        if pf.x_hi == cur:
            fi += 1
        if pg.x_hi == cur:
            gi += 1
        prev = cur
    merged: list[PlqPiece] = [rows[0]]
    for r in rows[1:]:
        if (r.a, r.b, r.c) == (merged[-1].a, merged[-1].b, merged[-1].c):
            merged[-1] = merged[-1]._replace(x_hi=r.x_hi)
        else:
            merged.append(r)
    if any(r.c == INF for r in merged[1:-1]):
        raise ValueError(
            "pointwise minimum has a disconnected domain and "
            "is not representable as a plq matrix"
        )
    return PlqFunction(tuple(merged))


def _emit_lower(
    rows: list[PlqPiece],
    pf: PlqPiece,
    pg: PlqPiece,
    lo: float,
    hi: float,
    tol: float,
) -> None:
    """Append rows covering (lo, hi] with the lower of the two quadratics."""
    if pf.c == INF and pg.c == INF:
        rows.append(PlqPiece(hi, 0.0, 0.0, INF))
        return
    if pf.c == INF:
        rows.append(PlqPiece(hi, pg.a, pg.b, pg.c))
        return
    if pg.c == INF:
        rows.append(PlqPiece(hi, pf.a, pf.b, pf.c))
        return
    da, db, dc = pf.a - pg.a, pf.b - pg.b, pf.c - pg.c
    cuts = [r for r in _quad_roots(da, db, dc, tol) if _strictly_inside(r, lo, hi, tol)]
    edges = [lo, *cuts, hi]
    for u, v in zip(edges, edges[1:]):
        x = _rep_point(u, v)
        d = (da * x + db) * x + dc
        winner = pf if d <= 0.0 else pg
        rows.append(PlqPiece(v, winner.a, winner.b, winner.c))


def _min_with_needle(f: PlqFunction, g: PlqFunction, tol: float) -> PlqFunction:
    if f.is_needle and g.is_needle:
        pf, pg = f.pieces[0], g.pieces[0]
        if pf.x_hi == pg.x_hi:
            return PlqFunction((PlqPiece(pf.x_hi, 0.0, 0.0, min(pf.c, pg.c)),))
        raise ValueError(
            "pointwise minimum of point indicators at distinct points "
            "is not representable as a plq matrix"
        )
    needle, other = (f, g) if f.is_needle else (g, f)
    x0, c0 = needle.pieces[0].x_hi, needle.pieces[0].c
    hv = eval_at(other, x0)
    if hv == INF:
        if all(p.c == INF for p in other.pieces):
            return needle
        raise ValueError(
            "pointwise minimum has a disconnected domain and "
            "is not representable as a plq matrix"
        )
    if c0 >= hv - (tol + tol * abs(hv)):
        return canonical_form(other)
    raise ValueError(
        "pointwise minimum dips below the surrounding function at a single "
        "point and is not representable as a plq matrix"
    )


# ---------------------------------------------------------------------------
# exact subdifferential


def subdifferential(
    f: PlqFunction, x: float, tol: float = DEFAULT_TOL
) -> Interval | None:
    """Exact subdifferential of a convex PLQ function at ``x``.

    Returns the closed interval of one-sided slopes, a singleton at smooth
    points, an outward-unbounded interval at finite domain walls, all of R at
    a needle's point, and ``None`` when ``x`` is outside the domain.
    """
    if not is_convex(f, tol):
        raise NotConvexError(MSG_NOT_CONVEX)
    if not is_finite(x):
        return None
    if eval_at(f, x) == INF:
        return None
    if f.is_needle:
        return Interval(NINF, INF)
    pieces = f.pieces
    i = 0
    while pieces[i].x_hi < x:
        i += 1
    p = pieces[i]
    if x < p.x_hi:
        return Interval(p.slope(x), p.slope(x))
    # x sits exactly on a breakpoint; the final breakpoint is +inf, so a
    # following piece always exists here
    lo = NINF if p.c == INF else p.slope(x)
    nxt = pieces[i + 1]
    hi = INF if nxt.c == INF else nxt.slope(x)
    return Interval(lo, hi)
