"""The PLQ data model: storage, parsing, integrity, evaluation, comparison.

A univariate piecewise linear-quadratic (PLQ) function is stored as an
(N+1)x4 matrix.  Row ``i`` holds ``(x_i, a_i, b_i, c_i)`` and means that the
function equals ``a_i x^2 + b_i x + c_i`` on the interval reaching up to the
breakpoint ``x_i`` (from the previous row's breakpoint, or -inf for the first
row).  The last breakpoint is +inf whenever there is more than one row.

Two single-row special cases:

* ``[x0 0 0 c]`` with finite ``x0`` is the needle function: value ``c`` at
  ``x0`` and +inf everywhere else (the indicator of a point, shifted).
* ``[+inf a b c]`` is a single quadratic on all of R.

An infinite constant ``c = +inf`` is only allowed in the first and last row
and then forces ``a = b = 0``; it marks the function +inf beyond a finite
domain wall.  ``c = -inf`` never occurs.

Breakpoint convention: the value at a shared breakpoint is taken from the row
ending there, except when that row is an infinite wall, in which case the
neighbouring finite row supplies the value (the stored function is therefore
lower semicontinuous at domain endpoints).  For convex continuous data both
rows agree and the convention is unobservable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import InvalidPlqError
from .extreal import (
    DEFAULT_TOL,
    INF,
    NINF,
    format_ext,
    is_finite,
    isclose_ext,
    parse_ext_token,
)
from .interval import Interval


class PlqPiece(NamedTuple):
    """One matrix row: quadratic ``a x^2 + b x + c`` valid up to ``x_hi``."""

    x_hi: float
    a: float
    b: float
    c: float

    def value(self, x: float) -> float:
        return (self.a * x + self.b) * x + self.c

    def slope(self, x: float) -> float:
        return 2.0 * self.a * x + self.b


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an integrity check: ``ok`` or the list of violations."""

    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


RowsLike = Iterable[Sequence[float]]


def check(candidate: "PlqFunction | RowsLike") -> CheckReport:
    """Verify the structural invariants of a candidate PLQ matrix.

    Violations are reported as data, naming the offending row; nothing is
    raised.  Accepts either a built :class:`PlqFunction` or raw rows.
    """
    if isinstance(candidate, PlqFunction):
        rows = [tuple(p) for p in candidate.pieces]
    else:
        rows = [tuple(float(v) for v in row) for row in candidate]

    bad: list[str] = []
    if not rows:
        return CheckReport(False, ("matrix must have at least one row",))
    for i, row in enumerate(rows):
        if len(row) != 4:
            bad.append(f"row {i}: expected 4 entries, got {len(row)}")
            continue
        x_hi, a, b, c = row
        if any(math.isnan(v) for v in row):
            bad.append(f"row {i}: nan entry")
            continue
        if x_hi == NINF:
            bad.append(f"row {i}: breakpoint may not be -inf")
        if not (is_finite(a) and is_finite(b)):
            bad.append(f"row {i}: quadratic and linear coefficients must be finite")
        if c == NINF:
            bad.append(f"row {i}: constant may not be -inf")
        if c == INF:
            if 0 < i < len(rows) - 1:
                bad.append(f"row {i}: infinite constant only allowed in first or last row")
            if a != 0.0 or b != 0.0:
                bad.append(f"row {i}: infinite constant requires zero quadratic and linear coefficients")
    if bad:
        return CheckReport(False, tuple(bad))

    n = len(rows)
    if n == 1:
        x_hi, a, b, c = rows[0]
        if is_finite(x_hi):
            # needle: shifted indicator of the point x_hi
            if a != 0.0 or b != 0.0:
                bad.append("row 0: a point-indicator row must have zero quadratic and linear coefficients")
            if not is_finite(c):
                bad.append("row 0: a point-indicator row must have a finite constant")
    else:
        for i in range(n - 1):
            if not is_finite(rows[i][0]):
                bad.append(f"row {i}: non-final breakpoint must be finite")
        if rows[-1][0] != INF:
            bad.append(f"row {n - 1}: final breakpoint must be +inf")
        for i in range(n - 1):
            if not rows[i][0] < rows[i + 1][0]:
                bad.append(f"row {i + 1}: breakpoints must be strictly increasing")
    return CheckReport(not bad, tuple(bad))


@dataclass(frozen=True)
class PlqFunction:
    """Immutable PLQ function: an ordered tuple of pieces.

    Construction validates the matrix invariants and raises
    :class:`InvalidPlqError` on violation, so every live instance is valid.
    """

    pieces: tuple[PlqPiece, ...]

    def __post_init__(self) -> None:
        # adding 0.0 folds -0.0 into +0.0 so equal rows are textually equal
        pieces = tuple(
            PlqPiece(*(float(v) + 0.0 for v in p)) for p in self.pieces
        )
        object.__setattr__(self, "pieces", pieces)
        report = check(pieces)
        if not report.ok:
            raise InvalidPlqError("; ".join(report.violations))

    @cached_property
    def breaks(self) -> tuple[float, ...]:
        return tuple(p.x_hi for p in self.pieces)

    @property
    def is_needle(self) -> bool:
        return len(self.pieces) == 1 and is_finite(self.pieces[0].x_hi)

    @property
    def is_global_quadratic(self) -> bool:
        return len(self.pieces) == 1 and self.pieces[0].x_hi == INF

    @property
    def matrix(self) -> list[list[float]]:
        return [list(p) for p in self.pieces]

    def __len__(self) -> int:
        return len(self.pieces)

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(format_ext(v) for v in p) for p in self.pieces)
        return f"PlqFunction[{rows}]"


def plq(rows: RowsLike) -> PlqFunction:
    """Build a :class:`PlqFunction` from an iterable of 4-entry rows."""
    return PlqFunction(tuple(PlqPiece(*(float(v) for v in row)) for row in rows))


# ---------------------------------------------------------------------------
# parsing / serialization


def parse_plq(text: str) -> PlqFunction:
    """Parse the PLQ text format: one row per line, four tokens per row.

    Tokens are decimal numbers or ``inf`` / ``-inf``.  Raises
    :class:`InvalidPlqError` naming the offending row on any malformed token,
    wrong arity, or integrity violation.
    """
    rows: list[tuple[float, float, float, float]] = []
    idx = 0
    for line in text.splitlines():
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != 4:
            raise InvalidPlqError(f"row {idx}: expected 4 entries, got {len(tokens)}")
        try:
            vals = tuple(parse_ext_token(t) for t in tokens)
        except ValueError as exc:
            raise InvalidPlqError(f"row {idx}: {exc}") from None
        rows.append(vals)
        idx += 1
    if not rows:
        raise InvalidPlqError("empty document: no rows found")
    report = check(rows)
    if not report.ok:
        raise InvalidPlqError("; ".join(report.violations))
    return plq(rows)


def serialize_plq(f: PlqFunction) -> str:
    """Text form of ``f``; ``parse_plq`` round-trips it exactly."""
    return "\n".join(" ".join(format_ext(v) for v in p) for p in f.pieces)


def _json_entry(v: float) -> float | str:
    if v == INF:
        return "inf"
    if v == NINF:
        return "-inf"
    return v


def to_json(f: PlqFunction) -> str:
    """JSON form ``{"rows": [[x, a, b, c], ...]}`` with infinities as strings."""
    rows = [[_json_entry(v) for v in p] for p in f.pieces]
    return json.dumps({"rows": rows})


def parse_plq_json(text: str) -> PlqFunction:
    """Parse the JSON form accepted wherever a function is an input."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidPlqError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "rows" not in doc:
        raise InvalidPlqError('JSON form must be an object with a "rows" key')
    raw = doc["rows"]
    if not isinstance(raw, list):
        raise InvalidPlqError('"rows" must be a list of 4-entry rows')
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != 4:
            raise InvalidPlqError(f"row {i}: expected 4 entries")
        try:
            rows.append(tuple(parse_ext_token(str(v)) for v in row))
        except ValueError as exc:
            raise InvalidPlqError(f"row {i}: {exc}") from None
    report = check(rows)
    if not report.ok:
        raise InvalidPlqError("; ".join(report.violations))
    return plq(rows)


def loads(text: str) -> PlqFunction:
    """Parse either accepted format, sniffing JSON by a leading ``{``."""
    if text.lstrip().startswith("{"):
        return parse_plq_json(text)
    return parse_plq(text)


# ---------------------------------------------------------------------------
# evaluation


def eval_grid(f: PlqFunction, xs: Sequence[float]) -> np.ndarray:
    """Evaluate ``f`` on an ascending grid.

    Runs as a single linear merge over pieces and grid, so the work is
    O(N + k) for N+1 pieces and k query points.  Values outside the domain
    are +inf.  Raises ``ValueError`` if the grid is not sorted ascending.
    """
    values, _ = eval_grid_ops(f, xs)
    return values


def eval_grid_ops(f: PlqFunction, xs: Sequence[float]) -> tuple[np.ndarray, int]:
    """Like :func:`eval_grid` but also reports the piece-lookup count.

    The counter exists so tests can pin the O(N + k) merge contract.
    """
    grid = np.asarray(xs, dtype=float)
    if grid.ndim != 1:
        raise ValueError("grid must be one-dimensional")
    if np.any(np.isnan(grid)):
        raise ValueError("grid may not contain nan")
    if grid.size > 1 and np.any(np.diff(grid) < 0):
        raise ValueError("grid must be sorted ascending")

    pieces = f.pieces
    n = len(pieces)
    needle = f.is_needle
    out = np.empty(grid.size, dtype=float)
    i = 0
    ops = grid.size
    for k in range(grid.size):
        x = grid[k]
        while i < n and pieces[i].x_hi < x:
            i += 1
            ops += 1
        if i == n:  # beyond a finite final breakpoint (needle only)
            out[k] = INF
            continue
        p = pieces[i]
        if needle:
            out[k] = p.c if x == p.x_hi else INF
        elif p.c == INF:
            if x == p.x_hi and i + 1 < n:
                out[k] = pieces[i + 1].value(x)  # closed domain endpoint
            else:
                out[k] = INF
        else:
            out[k] = p.value(x)
    return out, ops


def eval_at(f: PlqFunction, x: float) -> float:
    """Value of ``f`` at a single point."""
    return float(eval_grid(f, [x])[0])


# ---------------------------------------------------------------------------
# predicates and canonical form


def is_convex(f: PlqFunction, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``f`` is convex.

    Requires nonnegative curvature on every piece, continuity at interior
    breakpoints, and one-sided slopes nondecreasing across them.  Needles and
    global convex quadratics pass trivially.  Infinite walls impose no
    smoothness requirement on their neighbour.
    """
    pieces = f.pieces
    if f.is_needle:
        return True
    if any(p.a < 0 for p in pieces):
        return False
    for i in range(len(pieces) - 1):
        left, right = pieces[i], pieces[i + 1]
        if left.c == INF or right.c == INF:
            continue
        x = left.x_hi
        if not isclose_ext(left.value(x), right.value(x), tol):
            return False
        sl, sr = left.slope(x), right.slope(x)
        if sl > sr + tol + tol * max(abs(sl), abs(sr)):
            return False
    return True


def canonical_form(f: PlqFunction, tol: float = 0.0) -> PlqFunction:
    """Merge adjacent rows with identical coefficients (within ``tol``)."""
    merged: list[PlqPiece] = [f.pieces[0]]
    for p in f.pieces[1:]:
        q = merged[-1]
        if (
            isclose_ext(p.a, q.a, tol)
            and isclose_ext(p.b, q.b, tol)
            and isclose_ext(p.c, q.c, tol)
        ):
            merged[-1] = q._replace(x_hi=p.x_hi)
        else:
            merged.append(p)
    return PlqFunction(tuple(merged))


def is_equal(f: PlqFunction, g: PlqFunction, tol: float = DEFAULT_TOL) -> bool:
    """Equality of the canonical forms, entrywise within ``tol``."""
    cf, cg = canonical_form(f, tol), canonical_form(g, tol)
    if len(cf.pieces) != len(cg.pieces):
        return False
    for p, q in zip(cf.pieces, cg.pieces):
        if not all(isclose_ext(u, v, tol) for u, v in zip(p, q)):
            return False
    return True


def domain(f: PlqFunction) -> Interval | None:
    """Closure of the finiteness set; ``None`` for an improper function."""
    pieces = f.pieces
    if all(p.c == INF for p in pieces):
        return None
    if f.is_needle:
        x0 = pieces[0].x_hi
        return Interval(x0, x0)
    lo = pieces[0].x_hi if pieces[0].c == INF else NINF
    hi = pieces[-2].x_hi if len(pieces) > 1 and pieces[-1].c == INF else INF
    return Interval(lo, hi)
