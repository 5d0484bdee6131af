"""Extended-real values and interval primitives.

Every distance and representative in this package takes values in
``]-inf, +inf]``.  Finite values are plain floats and ``+inf`` is the IEEE
positive infinity.  NaN is never a value: any operation that would produce
one raises :class:`ExtRealError` instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INF = math.inf


class ExtRealError(ArithmeticError):
    """Raised when an extended-real operation would yield NaN or -inf."""


def check(a: float) -> float:
    """Return ``a`` as a float, rejecting NaN and -inf."""
    a = float(a)
    if math.isnan(a):
        raise ExtRealError("NaN is not an extended-real value")
    if a == -INF:
        raise ExtRealError("-inf is outside ]-inf, +inf]")
    return a


def is_finite(a: float) -> bool:
    return a != INF


def xadd(a: float, b: float) -> float:
    """Add two extended reals; ``+inf`` is absorbing."""
    a = check(a)
    b = check(b)
    if a == INF or b == INF:
        return INF
    return a + b


def xscale(c: float, a: float) -> float:
    """Multiply an extended real by a scalar ``c >= 0``.

    ``0 * (+inf)`` is taken to be 0 so that zero-weight terms drop out.
    """
    if c < 0 or math.isnan(c):
        raise ExtRealError(f"scale factor must be >= 0, got {c}")
    a = check(a)
    if a == INF:
        return INF if c > 0 else 0.0
    return c * a


def xmin(a: float, b: float) -> float:
    return min(check(a), check(b))


def xmax(a: float, b: float) -> float:
    return max(check(a), check(b))


def format_ext(a: float) -> str:
    """Serialize an extended real; ``+inf`` becomes ``"inf"``."""
    a = check(a)
    if a == INF:
        return "inf"
    return repr(a)


def parse_ext(text: str) -> float:
    text = text.strip()
    if text == "inf":
        return INF
    return check(float(text))


@dataclass(frozen=True)
class Interval:
    """A (possibly unbounded, possibly empty) real interval.

    Unbounded ends are encoded with ``-inf`` / ``+inf`` and are always open.
    """

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True
    empty: bool = False

    def __post_init__(self):
        if self.empty:
            return
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError(f"interval requires lo <= hi, got [{self.lo}, {self.hi}]")
        if self.lo == -INF:
            object.__setattr__(self, "lo_closed", False)
        if self.hi == INF:
            object.__setattr__(self, "hi_closed", False)

    @classmethod
    def make_empty(cls) -> "Interval":
        return cls(0.0, 0.0, False, False, empty=True)

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def real_line(cls) -> "Interval":
        return cls(-INF, INF, False, False)

    @property
    def is_empty(self) -> bool:
        if self.empty:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    @property
    def is_bounded(self) -> bool:
        return self.is_empty or (math.isfinite(self.lo) and math.isfinite(self.hi))

    def contains(self, x: float) -> bool:
        if self.is_empty or math.isnan(x):
            return False
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def intersect(self, other: "Interval") -> "Interval":
        if self.is_empty or other.is_empty:
            return Interval.make_empty()
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif other.lo > self.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif other.hi < self.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        if lo > hi:
            return Interval.make_empty()
        return Interval(lo, hi, lo_closed, hi_closed)

    def clip(self, x: float) -> float:
        """Clamp ``x`` into the closure of the interval."""
        return min(max(x, self.lo), self.hi)

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        left = "[" if self.lo_closed else "]"
        right = "]" if self.hi_closed else "["
        return f"{left}{self.lo}, {self.hi}{right}"


contains = Interval.contains


@dataclass(frozen=True)
class SetValue:
    """Value of a set-valued map: empty, a point, or a closed interval.

    A point is stored as the degenerate interval ``[v, v]`` so that
    ``SetValue.point(v) == SetValue.interval(v, v)``.
    """

    lo: float | None = None
    hi: float | None = None

    @classmethod
    def empty(cls) -> "SetValue":
        return cls()

    @classmethod
    def point(cls, v: float) -> "SetValue":
        v = float(v)
        return cls(v, v)

    @classmethod
    def interval(cls, lo: float, hi: float) -> "SetValue":
        if lo > hi:
            raise ValueError(f"set interval requires lo <= hi, got [{lo}, {hi}]")
        return cls(float(lo), float(hi))

    @property
    def kind(self) -> str:
        if self.lo is None:
            return "empty"
        if self.lo == self.hi:
            return "point"
        return "interval"

    @property
    def is_empty(self) -> bool:
        return self.lo is None

    @property
    def value(self) -> float:
        """The single element of a point value."""
        if self.kind != "point":
            raise ValueError(f"set value is {self.kind}, not a point")
        return self.lo

    def contains(self, v: float) -> bool:
        return self.lo is not None and self.lo <= v <= self.hi

    def endpoints(self) -> tuple[float, ...]:
        if self.lo is None:
            return ()
        if self.lo == self.hi:
            return (self.lo,)
        return (self.lo, self.hi)
