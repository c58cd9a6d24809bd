"""Brute-force verifier for ε-subgradient membership and interval endpoints.

Everything here works straight from the definition

    s ∈ ∂_ε f(x̄)  <=>  inf_y { f(y) - s y } >= f(x̄) - s x̄ - ε,

with the infimum computed exactly piece by piece (vertex clamped to the piece
interval, affine pieces minimized at an endpoint or diverging on an unbounded
tail).  No conjugate matrices, no pointwise-minimum matrices: this module is
the independent route against which the fast path is cross-validated, and it
is deliberately simple rather than fast.
"""

from __future__ import annotations

from .core import PlqFunction, eval_at
from .epssub import EpsQuery
from .errors import MSG_NOT_IN_DOMAIN, DomainError
from .extreal import INF, NINF, is_finite
from .interval import Interval

#: Slopes beyond this magnitude are treated as "no finite endpoint".
SLOPE_CAP = 1e12


def inf_f_minus_linear(f: PlqFunction, s: float) -> float:
    """Exact ``inf_y { f(y) - s y }`` (equals ``-f*(s)``), piece by piece."""
    pieces = f.pieces
    if f.is_needle:
        p = pieces[0]
        return p.c - s * p.x_hi
    best = INF
    lo = NINF
    for p in pieces:
        hi = p.x_hi
        if p.c != INF:
            bb = p.b - s
            if p.a > 0.0:
                y = (s - p.b) / (2.0 * p.a)
                y = min(max(y, lo), hi)
                if is_finite(y):
                    best = min(best, (p.a * y + bb) * y + p.c)
                for e in (lo, hi):
                    if is_finite(e):
                        best = min(best, (p.a * e + bb) * e + p.c)
            elif bb > 0.0:
                best = NINF if lo == NINF else min(best, bb * lo + p.c)
            elif bb < 0.0:
                best = NINF if hi == INF else min(best, bb * hi + p.c)
            else:
                best = min(best, p.c)
        lo = hi
    return best


def _member(f: PlqFunction, x_bar: float, eps: float, s: float, tol: float) -> bool:
    fx = eval_at(f, x_bar)
    if fx == INF:
        raise DomainError(MSG_NOT_IN_DOMAIN)
    threshold = fx - s * x_bar - eps
    slack = tol + tol * abs(threshold) if tol else 0.0
    return inf_f_minus_linear(f, s) >= threshold - slack


def oracle_member(f: PlqFunction, q: EpsQuery, s: float) -> bool:
    """Definition-level membership test of ``s`` in ``∂_ε f(x̄)``.

    The comparison is slackened by the query tolerance (scaled by magnitude)
    so that exact endpoints report membership despite roundoff.
    """
    return _member(f, q.x_bar, q.eps, s, q.tol)


def _seed_subgradient(f: PlqFunction, x: float) -> float:
    """Any one-sided slope at ``x``: a guaranteed member for every ε > 0."""
    if f.is_needle:
        return 0.0
    pieces = f.pieces
    i = 0
    while pieces[i].x_hi < x:
        i += 1
    p = pieces[i]
    if x < p.x_hi:
        return p.slope(x)
    if p.c != INF:
        return p.slope(x)
    return pieces[i + 1].slope(x)


def oracle_eps_interval(
    f: PlqFunction,
    q: EpsQuery,
    slope_cap: float = SLOPE_CAP,
    width: float = 1e-9,
) -> Interval:
    """Locate ``∂_ε f(x̄)`` by searching the membership test alone.

    Membership is an interval in ``s`` (the sublevel set of the convex gap
    ``f*(s) - l_x̄(s)``), so each finite endpoint is found by exponential
    search for a bracketing pair followed by bisection down to ``width``.
    An endpoint is reported infinite when no bracket exists within
    ``slope_cap``.  Bisection uses the unslackened comparison so the located
    boundary is not biased by the membership tolerance.
    """
    seed = _seed_subgradient(f, q.x_bar)
    if not _member(f, q.x_bar, q.eps, seed, 0.0):  # pragma: no cover - defensive
        raise ArithmeticError("seed subgradient failed the membership test")

    def endpoint(direction: float) -> float:
        step = 1.0
        inner = seed
        while True:
            outer = inner + direction * step
            if abs(outer) > slope_cap:
                return direction * INF
            if not _member(f, q.x_bar, q.eps, outer, 0.0):
                break
            inner = outer
            step *= 2.0
        while abs(outer - inner) > width:
            mid = 0.5 * (inner + outer)
            if _member(f, q.x_bar, q.eps, mid, 0.0):
                inner = mid
            else:
                outer = mid
        return 0.5 * (inner + outer)

    return Interval(endpoint(-1.0), endpoint(1.0))
