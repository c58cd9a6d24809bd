"""Shared test helpers: random PLQ instance generators."""

from __future__ import annotations

import numpy as np

from plqsub import INF, PlqFunction, domain, plq


def random_convex_plq(
    rng: np.random.Generator,
    max_rows: int = 21,
    coeff: float = 10.0,
) -> PlqFunction:
    """A random valid convex PLQ function.

    Primitive draws (curvatures, slopes, slope jumps, constants, breakpoints)
    stay within ``[-coeff, coeff]``; constants of later pieces are chained to
    keep the function continuous, so they can drift beyond.
    """
    kind = rng.random()
    if kind < 0.05:
        return plq([(rng.uniform(-coeff, coeff), 0, 0, rng.uniform(-coeff, coeff))])
    if kind < 0.12:
        a = 0.0 if rng.random() < 0.3 else rng.uniform(0, coeff)
        return plq([(INF, a, rng.uniform(-coeff, coeff), rng.uniform(-coeff, coeff))])

    left_wall = rng.random() < 0.25
    right_wall = rng.random() < 0.25
    budget = max_rows - int(left_wall) - int(right_wall)
    n_fin = int(rng.integers(1, max(2, budget)))
    if n_fin == 1 and not (left_wall or right_wall):
        n_fin = 2

    n_bp = (n_fin - 1) + int(left_wall) + int(right_wall)
    start = rng.uniform(-coeff, coeff)
    gaps = rng.uniform(0.2, 3.0, size=max(n_bp - 1, 0))
    bps = [start] + list(start + np.cumsum(gaps))

    rows: list[tuple[float, float, float, float]] = []
    bp_iter = iter(bps)
    if left_wall:
        rows.append((next(bp_iter), 0.0, 0.0, INF))

    def draw_a() -> float:
        return 0.0 if rng.random() < 0.4 else rng.uniform(0.01, coeff)

    a = draw_a()
    b = rng.uniform(-coeff, coeff)
    c = rng.uniform(-coeff, coeff)
    for i in range(n_fin):
        last_fin = i == n_fin - 1
        if last_fin:
            x_hi = next(bp_iter) if right_wall else INF
        else:
            x_hi = next(bp_iter)
        rows.append((x_hi, a, b, c))
        if not last_fin:
            # chain the next piece: continuity plus a nonnegative slope jump
            slope_here = 2 * a * x_hi + b
            value_here = (a * x_hi + b) * x_hi + c
            jump = 0.0 if rng.random() < 0.4 else rng.uniform(0.0, coeff)
            a2 = draw_a()
            b2 = slope_here + jump - 2 * a2 * x_hi
            c2 = value_here - (a2 * x_hi + b2) * x_hi
            a, b, c = a2, b2, c2
    if right_wall:
        rows.append((INF, 0.0, 0.0, INF))
    return plq(rows)


def random_plq(
    rng: np.random.Generator,
    max_rows: int = 8,
    coeff: float = 5.0,
) -> PlqFunction:
    """A random valid PLQ matrix, not necessarily convex or continuous."""
    n = int(rng.integers(1, max_rows + 1))
    if n == 1:
        if rng.random() < 0.3:
            return plq([(rng.uniform(-coeff, coeff), 0, 0, rng.uniform(-coeff, coeff))])
        return plq([(INF, *rng.uniform(-coeff, coeff, size=3))])
    start = rng.uniform(-coeff, coeff)
    bps = list(start + np.cumsum(rng.uniform(0.2, 2.0, size=n - 1)))
    rows = []
    for i in range(n):
        x_hi = bps[i] if i < n - 1 else INF
        if (i == 0 or i == n - 1) and rng.random() < 0.15:
            rows.append((x_hi, 0.0, 0.0, INF))
        else:
            rows.append((x_hi, *rng.uniform(-coeff, coeff, size=3)))
    return plq(rows)


def random_point_in_domain(
    rng: np.random.Generator, f: PlqFunction, clamp: float = 20.0
) -> float:
    dom = domain(f)
    assert dom is not None
    if dom.is_singleton:
        return dom.lo
    lo = dom.lo if np.isfinite(dom.lo) else -clamp
    hi = dom.hi if np.isfinite(dom.hi) else clamp
    if hi < lo:  # domain entirely beyond the clamp box
        lo, hi = (dom.lo, dom.lo + clamp) if np.isfinite(dom.lo) else (dom.hi - clamp, dom.hi)
    return float(rng.uniform(lo, hi))
