"""Closed extended-real intervals."""

from __future__ import annotations

from dataclasses import dataclass

from .extreal import DEFAULT_TOL, ensure_ext, ext_sub, fmt_g, is_finite


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with extended-real endpoints.

    Never empty: an absent result is modelled as ``None`` by the operations
    that can produce one, not as an inverted interval.
    """

    lo: float
    hi: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", ensure_ext(self.lo, "interval lower bound"))
        object.__setattr__(self, "hi", ensure_ext(self.hi, "interval upper bound"))
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return is_finite(self.lo) and is_finite(self.hi)

    def width(self) -> float:
        return ext_sub(self.hi, self.lo)

    def contains(self, s: float, tol: float = 0.0) -> bool:
        slack = tol + tol * max(abs(s), 1.0) if tol else 0.0
        return self.lo - slack <= s <= self.hi + slack

    def issubset(self, other: "Interval", tol: float = DEFAULT_TOL) -> bool:
        slack = tol
        return other.lo - slack <= self.lo and self.hi <= other.hi + slack

    def __str__(self) -> str:
        return f"[{fmt_g(self.lo)}, {fmt_g(self.hi)}]"
