"""Scaled-integer reals with a proven absolute error bound.

A :class:`FixedPoint` stands for the interval
``[(mantissa - err_ulp) / 2**scale_bits, (mantissa + err_ulp) / 2**scale_bits]``
and every operation returns a value whose interval contains the exact result
of the operation applied to any points of the input intervals.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Tuple, Union


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _ceil_shift(a: int, shift: int) -> int:
    """ceil(a / 2**shift) for a >= 0."""
    return -((-a) >> shift)


def allow_long_int_str(digits: int) -> None:
    """Raise the interpreter's int->str conversion limit when it is too low."""
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is not None:
        limit = getter()
        if limit and limit < digits + 64:
            sys.set_int_max_str_digits(digits + 64)


@dataclass(frozen=True)
class FixedPoint:
    mantissa: int
    scale_bits: int
    err_ulp: int = 0

    def __post_init__(self) -> None:
        if self.scale_bits <= 0:
            raise ValueError("scale_bits must be positive")
        if self.err_ulp < 0:
            raise ValueError("err_ulp must be nonnegative")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_int(cls, v: int, scale_bits: int) -> "FixedPoint":
        return cls(v << scale_bits, scale_bits, 0)

    @classmethod
    def from_fraction(cls, q: Union[int, Fraction], scale_bits: int) -> "FixedPoint":
        q = Fraction(q)
        m, r = divmod(q.numerator << scale_bits, q.denominator)
        return cls(m, scale_bits, 1 if r else 0)

    # -- inspection ---------------------------------------------------------

    @property
    def ulp(self) -> Fraction:
        return Fraction(1, 1 << self.scale_bits)

    def value(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.scale_bits)

    def error(self) -> Fraction:
        return Fraction(self.err_ulp, 1 << self.scale_bits)

    def interval(self) -> Tuple[Fraction, Fraction]:
        one = 1 << self.scale_bits
        return (
            Fraction(self.mantissa - self.err_ulp, one),
            Fraction(self.mantissa + self.err_ulp, one),
        )

    def contains(self, x: Union[int, Fraction]) -> bool:
        lo, hi = self.interval()
        return lo <= x <= hi

    def __float__(self) -> float:
        return float(self.value())

    # -- arithmetic ---------------------------------------------------------

    def rescale(self, scale_bits: int) -> "FixedPoint":
        shift = self.scale_bits - scale_bits
        if shift <= 0:
            return FixedPoint(self.mantissa << -shift, scale_bits, self.err_ulp << -shift)
        m = self.mantissa >> shift
        exact = (m << shift) == self.mantissa
        return FixedPoint(m, scale_bits, _ceil_shift(self.err_ulp, shift) + (0 if exact else 1))

    def _aligned(self, other: "FixedPoint") -> Tuple["FixedPoint", "FixedPoint"]:
        s = max(self.scale_bits, other.scale_bits)
        return self.rescale(s), other.rescale(s)

    def __add__(self, other: Union["FixedPoint", int]) -> "FixedPoint":
        if isinstance(other, int):
            other = FixedPoint.from_int(other, self.scale_bits)
        a, b = self._aligned(other)
        return FixedPoint(a.mantissa + b.mantissa, a.scale_bits, a.err_ulp + b.err_ulp)

    __radd__ = __add__

    def __neg__(self) -> "FixedPoint":
        return FixedPoint(-self.mantissa, self.scale_bits, self.err_ulp)

    def __sub__(self, other: Union["FixedPoint", int]) -> "FixedPoint":
        return self + (-other)

    def __abs__(self) -> "FixedPoint":
        return -self if self.mantissa < 0 else self

    def mul(self, other: Union["FixedPoint", int], scale_bits: Optional[int] = None) -> "FixedPoint":
        if isinstance(other, int):
            return FixedPoint(self.mantissa * other, self.scale_bits, self.err_ulp * abs(other))
        s = scale_bits or max(self.scale_bits, other.scale_bits)
        x, ex, y, ey = self.mantissa, self.err_ulp, other.mantissa, other.err_ulp
        prod = x * y
        err = abs(x) * ey + abs(y) * ex + ex * ey
        shift = self.scale_bits + other.scale_bits - s
        if shift <= 0:
            return FixedPoint(prod << -shift, s, err << -shift)
        m = prod >> shift
        rounding = 0 if (m << shift) == prod else 1
        return FixedPoint(m, s, _ceil_shift(err, shift) + rounding)

    def __mul__(self, other: Union["FixedPoint", int]) -> "FixedPoint":
        return self.mul(other)

    __rmul__ = __mul__

    def div(self, other: "FixedPoint", scale_bits: Optional[int] = None) -> "FixedPoint":
        if isinstance(other, int):
            other = FixedPoint.from_int(other, self.scale_bits)
        s = scale_bits or max(self.scale_bits, other.scale_bits)
        if abs(other.mantissa) <= other.err_ulp:
            raise ZeroDivisionError("divisor interval contains zero")
        # the quotient is scale-free once both operands share a scale
        a, b = self._aligned(other)
        X, ex, Y, ey = a.mantissa, a.err_ulp, b.mantissa, b.err_ulp
        m, r = divmod(X << s, Y)
        # |x/y - X/Y| <= (ex*|Y| + |X|*ey) / (|Y| * (|Y| - ey)), in real units
        err_num = (ex * abs(Y) + abs(X) * ey) << s
        err_den = abs(Y) * (abs(Y) - ey)
        err = _ceil_div(err_num, err_den) if err_num else 0
        return FixedPoint(m, s, err + (1 if r else 0))

    def __truediv__(self, other: Union["FixedPoint", int]) -> "FixedPoint":
        return self.div(other)

    def widen(self, extra: Union[int, Fraction]) -> "FixedPoint":
        """Add ``extra`` (a real, >= 0) to the error radius."""
        extra = Fraction(extra)
        if extra < 0:
            raise ValueError("cannot widen by a negative amount")
        add = _ceil_div(extra.numerator << self.scale_bits, extra.denominator)
        return FixedPoint(self.mantissa, self.scale_bits, self.err_ulp + add)

    # -- output -------------------------------------------------------------

    def truncated_digits(self, d: int) -> Optional[str]:
        """``floor(x * 10**d)`` rendered as ``I.DDDD`` (d places) if every point
        of the interval agrees on it; ``None`` when the interval straddles a
        decimal boundary."""
        lo = ((self.mantissa - self.err_ulp) * 10 ** d) >> self.scale_bits
        hi = ((self.mantissa + self.err_ulp) * 10 ** d) >> self.scale_bits
        if lo != hi:
            return None
        if lo < 0:
            raise ValueError("truncated_digits needs a nonnegative value")
        allow_long_int_str(d)
        ip, fp = divmod(lo, 10 ** d)
        return f"{ip}.{fp:0{d}d}" if d else f"{ip}."

    def rounded_str(self, places: int) -> str:
        """Midpoint rounded to ``places`` decimals (for reports, not a guarantee)."""
        scaled = self.mantissa * 10 ** places
        q = (scaled + (1 << (self.scale_bits - 1))) >> self.scale_bits
        sign = "-" if q < 0 else ""
        ip, fp = divmod(abs(q), 10 ** places)
        return f"{sign}{ip}.{fp:0{places}d}"


def sqrt_fixed(x: FixedPoint, scale_bits: int) -> FixedPoint:
    """Square root by integer Newton iteration (``math.isqrt``) at ``scale_bits``.

    The result interval is ``[isqrt(lo), isqrt(hi) + 1]`` at the target scale,
    so ``err_ulp`` is 1 for an exact non-square input and 0 for an exact square.
    """
    if x.mantissa < 0:
        raise ValueError("square root of a negative number")
    shift = 2 * scale_bits - x.scale_bits

    def scaled(v: int, ceil: bool) -> int:
        if shift >= 0:
            return v << shift
        return _ceil_shift(v, -shift) if ceil else v >> -shift

    lo_in = scaled(max(0, x.mantissa - x.err_ulp), ceil=False)
    mid_in = scaled(x.mantissa, ceil=False)
    hi_in = scaled(x.mantissa + x.err_ulp, ceil=True)
    m = isqrt(mid_in)
    lo = isqrt(lo_in)
    r = isqrt(hi_in)
    hi = r if r * r == hi_in else r + 1
    # mid_in may have been floored, so the exact mid sqrt is within [lo, hi] too
    return FixedPoint(m, scale_bits, max(m - lo, hi - m))
