"""The ε-subdifferential of a convex univariate PLQ function.

For proper convex ``f``, a point ``x̄`` in its domain and ``ε > 0``, the set

    ∂_ε f(x̄) = { s : f(y) >= f(x̄) + s (y - x̄) - ε  for all y }

is a closed interval ``[v_l, v_u]``.  It equals the slope set on which the
conjugate ``f*`` lies on or below the affine function

    l_x̄(s) = ε - f(x̄) + x̄ s,

so the general recipe is: conjugate; affine minorant; pointwise minimum
``m = min(f*, l_x̄)``; read the coincidence set ``{s : m(s) = f*(s)}``.  Here
that recipe is specialised to the PLQ matrix representation, where the
coincidence set is read off the first and last rows of ``m``:

* ``v_l`` is m's first breakpoint if the first row is a copy of the minorant
  row ``(0, x̄, ε - f(x̄))``, else -inf (then f* stays below l all the way);
* ``v_u`` symmetrically from the last row and second-to-last breakpoint.

Two degenerate cases short-circuit the recipe: a needle input (the interval
is all of R, no minimum needs computing) and an affine input, detected by its
conjugate being a needle (the interval is the singleton slope).  Every step
is O(N) in the number of rows, and so is the whole query.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import PlqFunction, PlqPiece, eval_at, is_convex
from .errors import (
    MSG_NOT_CONVEX,
    MSG_NOT_IN_DOMAIN,
    DomainError,
    NotConvexError,
)
from .extreal import DEFAULT_TOL, INF, NINF, is_finite, isclose_ext
from .interval import Interval
from .transforms import conjugate, plq_min


@dataclass(frozen=True)
class EpsQuery:
    """A query point ``x̄`` with enlargement ``ε > 0`` and comparison tolerance."""

    x_bar: float
    eps: float
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if not is_finite(self.x_bar):
            raise ValueError("x̄ must be finite")
        if not (is_finite(self.eps) and self.eps > 0.0):
            raise ValueError("ε must be a finite positive number")
        if not (is_finite(self.tol) and self.tol > 0.0):
            raise ValueError("tol must be a finite positive number")


@dataclass(frozen=True)
class EpsSubdiffResult:
    """The computed interval together with the intermediate functions.

    ``minorant`` is the affine function l_x̄ in slope space; ``m`` is
    ``plq_min(f_conj, minorant)`` and is ``None`` on the two short-circuit
    branches (``case_tag`` of ``"indicator-f"`` or ``"linear-f"``), where no
    pointwise minimum is formed.
    """

    interval: Interval
    f_conj: PlqFunction
    minorant: PlqFunction | None
    m: PlqFunction | None
    case_tag: str  # "indicator-f" | "linear-f" | "general"


def validate_function(f: PlqFunction, tol: float = DEFAULT_TOL) -> None:
    """Run the function-level input gates.

    Instances of :class:`PlqFunction` are structurally valid by construction,
    so the "not plq" gate only fires for rows smuggled past the constructor;
    the convexity gate does the real work here.
    """
    if not is_convex(f, tol):
        raise NotConvexError(MSG_NOT_CONVEX)


def validate_query_input(f: PlqFunction, x_bar: float, tol: float = DEFAULT_TOL) -> float:
    """Run all three input gates and return ``f(x̄)``.

    Order and messages follow the tool contract: invalid matrix, then
    nonconvex, then a query point outside the domain.
    """
    validate_function(f, tol)
    fx = eval_at(f, x_bar)
    if fx == INF:
        raise DomainError(MSG_NOT_IN_DOMAIN)
    return fx


def affine_minorant(f: PlqFunction, q: EpsQuery) -> PlqFunction:
    """The slope-space affine function ``l_x̄(s) = ε - f(x̄) + x̄ s``.

    Stored as the single row ``[+inf, 0, x̄, ε - f(x̄)]``.
    """
    fx = eval_at(f, q.x_bar)
    if fx == INF:
        raise DomainError(MSG_NOT_IN_DOMAIN)
    return PlqFunction((PlqPiece(INF, 0.0, q.x_bar, q.eps - fx),))


def eps_subdifferential(f: PlqFunction, q: EpsQuery) -> EpsSubdiffResult:
    """Compute ``∂_ε f(x̄)`` for a valid convex PLQ function."""
    validate_query_input(f, q.x_bar, q.tol)
    return eps_subdifferential_with_conjugate(f, None, q)


def eps_subdifferential_with_conjugate(
    f: PlqFunction, f_conj: PlqFunction | None, q: EpsQuery
) -> EpsSubdiffResult:
    """Query with a precomputed conjugate, for sweeps reusing one transform.

    The caller is responsible for having validated ``f``; ``f_conj`` must be
    ``conjugate(f)`` or ``None`` to compute it here.
    """
    fx = eval_at(f, q.x_bar)
    if fx == INF:
        raise DomainError(MSG_NOT_IN_DOMAIN)

    if f.is_needle:
        fc = conjugate(f, q.tol) if f_conj is None else f_conj
        return EpsSubdiffResult(
            interval=Interval(NINF, INF),
            f_conj=fc,
            minorant=affine_minorant(f, q),
            m=None,
            case_tag="indicator-f",
        )

    fc = conjugate(f, q.tol) if f_conj is None else f_conj
    if fc.is_needle:
        s0 = fc.pieces[0].x_hi
        return EpsSubdiffResult(
            interval=Interval(s0, s0),
            f_conj=fc,
            minorant=affine_minorant(f, q),
            m=None,
            case_tag="linear-f",
        )

    minorant = affine_minorant(f, q)
    m = plq_min(fc, minorant, q.tol)
    rows = m.pieces
    k = len(rows) - 1
    if k == 0:
        interval = Interval(NINF, INF)
    else:
        lb, lc = q.x_bar, q.eps - fx
        first, last = rows[0], rows[-1]
        v_l = rows[0].x_hi if _matches_minorant(first, lb, lc, q.tol) else NINF
        v_u = rows[k - 1].x_hi if _matches_minorant(last, lb, lc, q.tol) else INF
        interval = Interval(v_l, v_u)
    return EpsSubdiffResult(interval, fc, minorant, m, "general")


def _matches_minorant(row: PlqPiece, lb: float, lc: float, tol: float) -> bool:
    """Scaled-tolerance match of a row's coefficients against (0, x̄, ε - f(x̄))."""
    return (
        isclose_ext(row.a, 0.0, tol)
        and isclose_ext(row.b, lb, tol)
        and isclose_ext(row.c, lc, tol)
    )
