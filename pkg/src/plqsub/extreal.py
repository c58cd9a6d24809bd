"""Extended-real scalars.

Breakpoints, coefficients, function values and interval bounds all live in
R ∪ {-inf, +inf}.  IEEE doubles already carry both infinities, so extended
reals are represented as plain ``float``; what raw floats do not give us is
protection against silently producing nan (``inf - inf``) or letting nan leak
into a function definition.  The helpers here add exactly that: every value
entering the library goes through :func:`ensure_ext`, and arithmetic that
could form an indeterminate goes through the checked ``ext_*`` operations.
"""

from __future__ import annotations

import math

INF = math.inf
NINF = -math.inf

#: Default comparison tolerance: absolute and relative parts are both taken
#: from this single knob (see :func:`isclose_ext`).
DEFAULT_TOL = 1e-9


def ensure_ext(value: float, what: str = "value") -> float:
    """Coerce to float, rejecting nan. Infinities pass through."""
    v = float(value)
    if math.isnan(v):
        raise ValueError(f"{what} may not be nan")
    return v


def is_finite(value: float) -> bool:
    return math.isfinite(value)


def ext_add(a: float, b: float) -> float:
    """a + b on extended reals. ``inf + (-inf)`` is a program error."""
    if math.isinf(a) and math.isinf(b) and (a > 0) != (b > 0):
        raise ArithmeticError("inf - inf is undefined")
    return a + b


def ext_sub(a: float, b: float) -> float:
    """a - b on extended reals. ``inf - inf`` is a program error."""
    if math.isinf(a) and math.isinf(b) and (a > 0) == (b > 0):
        raise ArithmeticError("inf - inf is undefined")
    return a - b


def isclose_ext(a: float, b: float, tol: float = DEFAULT_TOL) -> bool:
    """Tolerance-based equality on extended reals.

    Infinities compare equal only to the same infinity.  Finite values use a
    combined absolute/relative criterion, ``|a - b| <= tol + tol*max(|a|,|b|)``,
    so the single ``tol`` knob scales with magnitude.
    """
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol + tol * max(abs(a), abs(b))


def parse_ext_token(token: str) -> float:
    """Parse one textual entry: a decimal number or ``inf`` / ``-inf``."""
    try:
        v = float(token)
    except ValueError:
        raise ValueError(f"invalid numeric token {token!r}") from None
    if math.isnan(v):
        raise ValueError(f"invalid numeric token {token!r}")
    return v


def format_ext(value: float) -> str:
    """Shortest exact text form: ``inf``/``-inf``, integers bare, else repr."""
    if value == INF:
        return "inf"
    if value == NINF:
        return "-inf"
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def fmt_g(value: float, digits: int = 8) -> str:
    """Human display form with ``digits`` significant digits."""
    if value == INF:
        return "inf"
    if value == NINF:
        return "-inf"
    return f"%.{digits}g" % value
