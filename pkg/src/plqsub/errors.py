"""Exception types and the validation messages they carry.

The three validation messages are part of the tool's contract (they are also
what the command line prints before exiting with status 2), so they live here
as constants and tests may assert on them verbatim.
"""

from __future__ import annotations

MSG_NOT_PLQ = "the input function is not plq."
MSG_NOT_CONVEX = "the input function is not convex."
MSG_NOT_IN_DOMAIN = "x̄ is not in the domain of the function."


class PlqError(Exception):
    """Base class for library errors."""

    code = "plq_error"


class InvalidPlqError(PlqError):
    """The data does not describe a valid PLQ function."""

    code = "not_plq"


class NotConvexError(PlqError):
    """An operation requiring convexity received a nonconvex function."""

    code = "not_convex"


class DomainError(PlqError):
    """The query point lies outside the function's domain."""

    code = "xbar_not_in_domain"


class ConsistencyError(PlqError):
    """An internal invariant failed; indicates a bug, never expected."""

    code = "internal_consistency"
