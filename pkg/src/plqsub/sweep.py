"""Parameter sweeps of the ε-subdifferential and the rectangle witness check.

Sweeps sample the multifunction interval endpoints along a grid, either in
the query point (fixed ε) or in ε (fixed query point).  The conjugate does
not depend on the query, so one transform is computed and reused across the
whole grid.

The witness check illustrates the approximation theorem for ε-subgradients:
given ``s ∈ ∂_ε f(x̄)`` and ``λ > 0`` there is a point of the graph of the
exact subdifferential inside the rectangle ``[x̄-λ, x̄+λ] x [s-ε/λ, s+ε/λ]``.
The graph of ``∂f`` is a monotone staircase (sloped or flat segments on
pieces, vertical segments at kinks and domain walls), so the intersection is
computed analytically by clipping each staircase segment against the
rectangle; an empty intersection is therefore a hard consistency failure,
never a sampling artifact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .core import PlqFunction, eval_at
from .epssub import (
    EpsQuery,
    eps_subdifferential_with_conjugate,
    validate_function,
    validate_query_input,
)
from .errors import ConsistencyError
from .extreal import DEFAULT_TOL, INF, NINF, format_ext, is_finite
from .oracle import oracle_member
from .transforms import conjugate

_AXES = ("x", "eps")


@dataclass(frozen=True)
class SubdiffGraph:
    """Sampled multifunction: ordered ``(param, lo, hi)`` triples.

    ``skipped`` reports grid points that fell outside the domain and were
    omitted from ``samples``.
    """

    axis: str
    samples: tuple[tuple[float, float, float], ...]
    skipped: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.axis not in _AXES:
            raise ValueError(f"axis must be one of {_AXES}")
        params = [p for p, _, _ in self.samples]
        if any(b <= a for a, b in zip(params, params[1:])):
            raise ValueError("sample parameters must be strictly increasing")


@dataclass(frozen=True)
class BrWitness:
    """An exact-subdifferential graph point approximating an ε-subgradient.

    Satisfies ``|x_lam - x̄| <= lam``, ``|s_lam - s| <= ε/lam`` and
    ``s_lam ∈ ∂f(x_lam)``.
    """

    lam: float
    x_lam: float
    s_lam: float


def _checked_grid(grid: Sequence[float], what: str) -> list[float]:
    pts = [float(v) for v in grid]
    if not pts:
        raise ValueError(f"{what} grid must not be empty")
    if any(not is_finite(v) for v in pts):
        raise ValueError(f"{what} grid entries must be finite")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError(f"{what} grid must be strictly increasing")
    return pts


def sweep_x(
    f: PlqFunction,
    eps: float,
    grid: Sequence[float],
    tol: float = DEFAULT_TOL,
) -> SubdiffGraph:
    """``∂_ε f(x)`` along an ascending grid of query points, fixed ``ε``."""
    validate_function(f, tol)
    if not (is_finite(eps) and eps > 0.0):
        raise ValueError("ε must be a finite positive number")
    pts = _checked_grid(grid, "x")
    fc = conjugate(f, tol)
    samples: list[tuple[float, float, float]] = []
    skipped: list[float] = []
    for x in pts:
        if eval_at(f, x) == INF:
            skipped.append(x)
            continue
        res = eps_subdifferential_with_conjugate(f, fc, EpsQuery(x, eps, tol))
        samples.append((x, res.interval.lo, res.interval.hi))
    return SubdiffGraph("x", tuple(samples), tuple(skipped))


def sweep_eps(
    f: PlqFunction,
    x_bar: float,
    grid: Sequence[float],
    tol: float = DEFAULT_TOL,
) -> SubdiffGraph:
    """``∂_ε f(x̄)`` along an ascending grid of positive ε, fixed ``x̄``."""
    validate_query_input(f, x_bar, tol)
    pts = _checked_grid(grid, "eps")
    if pts[0] <= 0.0:
        raise ValueError("eps grid entries must be positive")
    fc = conjugate(f, tol)
    samples = []
    for eps in pts:
        res = eps_subdifferential_with_conjugate(f, fc, EpsQuery(x_bar, eps, tol))
        samples.append((eps, res.interval.lo, res.interval.hi))
    return SubdiffGraph("eps", tuple(samples))


# ---------------------------------------------------------------------------
# rectangle witness


def br_witness(f: PlqFunction, q: EpsQuery, s: float, lam: float) -> BrWitness:
    """Find a graph point of ``∂f`` inside the λ x ε/λ rectangle around (x̄, s).

    The returned point minimizes ``|x - x̄|`` (ties broken by ``|s' - s|``),
    so a degenerate rectangle around a true subgradient returns the query
    pair itself.  Raises ``ValueError`` when ``s`` fails the ε-subgradient
    precondition and :class:`ConsistencyError` when no intersection exists,
    which the approximation theorem rules out for correct inputs.
    """
    if not (is_finite(lam) and lam > 0.0):
        raise ValueError("lambda must be a finite positive number")
    validate_query_input(f, q.x_bar, q.tol)
    member_q = EpsQuery(q.x_bar, q.eps, max(q.tol, 1e-7))
    if not oracle_member(f, member_q, s):
        raise ValueError("slope is not an ε-subgradient at x̄")

    x_lo, x_hi = q.x_bar - lam, q.x_bar + lam
    s_lo, s_hi = s - q.eps / lam, s + q.eps / lam

    best: tuple[float, float, float, float] | None = None

    def offer(x: float, slope: float) -> None:
        nonlocal best
        cand = (abs(x - q.x_bar), abs(slope - s), x, slope)
        if best is None or cand < best:
            best = cand

    pieces = f.pieces
    if f.is_needle:
        x0 = pieces[0].x_hi
        if x_lo <= x0 <= x_hi:  # the graph is the whole vertical line at x0
            offer(x0, min(max(s, s_lo), s_hi))
    else:
        prev = NINF
        for i, p in enumerate(pieces):
            if p.c != INF:
                _offer_segment(offer, q.x_bar, p, prev, p.x_hi, x_lo, x_hi, s_lo, s_hi)
            if is_finite(p.x_hi) and x_lo <= p.x_hi <= x_hi:
                g_lo, g_hi = _vertical_range(pieces, i)
                if g_lo is not None:
                    v_lo, v_hi = max(g_lo, s_lo), min(g_hi, s_hi)
                    if v_lo <= v_hi:
                        offer(p.x_hi, min(max(s, v_lo), v_hi))
            prev = p.x_hi

    if best is None:
        raise ConsistencyError(
            "rectangle does not meet the subdifferential graph; "
            "this contradicts the approximation theorem and indicates a bug"
        )
    return BrWitness(lam, best[2], best[3])


def _offer_segment(offer, x_bar, p, x_from, x_to, x_lo, x_hi, s_lo, s_hi) -> None:
    """Clip one sloped/flat staircase segment against the rectangle."""
    u1, u2 = max(x_from, x_lo), min(x_to, x_hi)
    if u1 > u2:
        return
    if p.a > 0.0:
        # slope 2ax + b is increasing; restrict x to the preimage of [s_lo, s_hi]
        u1 = max(u1, (s_lo - p.b) / (2.0 * p.a))
        u2 = min(u2, (s_hi - p.b) / (2.0 * p.a))
        if u1 > u2:
            return
    elif not (s_lo <= p.b <= s_hi):
        return
    x_star = min(max(x_bar, u1), u2)
    offer(x_star, p.slope(x_star))


def _vertical_range(pieces, i) -> tuple[float | None, float | None]:
    """Slope range of the vertical graph segment at breakpoint i, if any."""
    p = pieces[i]
    if i + 1 >= len(pieces):
        return None, None
    nxt = pieces[i + 1]
    if p.c == INF and nxt.c == INF:
        return None, None
    g_lo = NINF if p.c == INF else p.slope(p.x_hi)
    g_hi = INF if nxt.c == INF else nxt.slope(p.x_hi)
    return g_lo, g_hi


# ---------------------------------------------------------------------------
# graph export


def graph_to_csv(graph: SubdiffGraph) -> str:
    """CSV form: header ``param,lo,hi``; infinities spelled inf/-inf."""
    lines = ["param,lo,hi"]
    for p, lo, hi in graph.samples:
        lines.append(f"{format_ext(p)},{format_ext(lo)},{format_ext(hi)}")
    return "\n".join(lines) + "\n"


def graph_to_json(graph: SubdiffGraph) -> str:
    def enc(v: float):
        return format_ext(v) if not is_finite(v) else v

    doc = {
        "axis": graph.axis,
        "samples": [[enc(p), enc(lo), enc(hi)] for p, lo, hi in graph.samples],
        "skipped": [enc(p) for p in graph.skipped],
    }
    return json.dumps(doc)
