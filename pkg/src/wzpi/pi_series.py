"""Digits of pi from Ramanujan's 1103 + 26390k series, and the 2/pi series.

The 1/pi series is summed by binary splitting in pure integers, using

    (1/4)_k (1/2)_k (3/4)_k / k!**3 = (4k)! / (256**k k!**4)

so that  t_k = (4k)! (1103 + 26390k) / (k!**4 396**(4k) 9801)  and
1/pi = 2 sqrt(2) sum_k t_k.  The truncation error is bounded by a geometric
tail, every fixed-point step carries its own error radius, and digits are only
printed once the final interval pins them down.

An independent Machin-formula evaluation serves as the oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .exact_arith import Poly2, RatFunc
from .fixedpoint import FixedPoint, sqrt_fixed
from .hyperterm import (
    HyperTerm,
    PochFactor,
    ramanujan_eq3_summand,
    shift_quotients,
    term_eval,
)

LinearFactor = Tuple[int, int]  # (alpha, beta) for alpha*k + beta


class InvariantError(RuntimeError):
    """An internal consistency check failed (a bug, not a bad input)."""


def _lin(f: LinearFactor, k: int) -> int:
    return f[0] * k + f[1]


def _prod(fs: Sequence[LinearFactor], k: int) -> int:
    out = 1
    for f in fs:
        out *= _lin(f, k)
    return out


@dataclass(frozen=True)
class SeriesSpec:
    """``t_k = scale * poly(k) * prod_{j=1..k} p(j)/q(j)``.

    ``p``, ``q`` and ``poly`` are products of integer linear factors in ``k``.
    """

    name: str
    p: Tuple[LinearFactor, ...]
    q: Tuple[LinearFactor, ...]
    poly: Tuple[LinearFactor, ...]
    scale: Fraction = Fraction(1)
    description: str = ""

    def p_at(self, k: int) -> int:
        return 1 if k == 0 else _prod(self.p, k)

    def q_at(self, k: int) -> int:
        if k == 0:
            return 1
        v = _prod(self.q, k)
        if v == 0:
            raise ZeroDivisionError(f"{self.name}: q({k}) = 0")
        return v

    def poly_at(self, k: int) -> int:
        return _prod(self.poly, k)

    def term(self, k: int) -> Fraction:
        """Exact ``t_k`` by direct accumulation (for checking)."""
        num, den = 1, 1
        for j in range(1, k + 1):
            num *= self.p_at(j)
            den *= self.q_at(j)
        return self.scale * Fraction(self.poly_at(k) * num, den)


RAMANUJAN_1103 = SeriesSpec(
    name="ramanujan-1103",
    p=((4, -3), (4, -2), (4, -1), (4, 0)),
    q=((1, 0), (1, 0), (1, 0), (1, 0), (0, 396 ** 4)),
    poly=((26390, 1103),),
    scale=Fraction(1, 9801),
    description="1/pi = 2*sqrt(2) * sum",
)

BAUER_2_OVER_PI = SeriesSpec(
    name="bauer-2/pi",
    p=((0, -1), (2, -1), (2, -1), (2, -1)),
    q=((0, 8), (1, 0), (1, 0), (1, 0)),
    poly=((4, 1),),
    description="2/pi = sum",
)

#: decimal digits gained per term of the 1103 series: log10(396**4 / 256)
DIGITS_PER_TERM = 4 * math.log10(396) - math.log10(256)


@dataclass(frozen=True)
class SplitTriple:
    """Integers for the range ``[a, b)``: ``T/Q = sum_k poly(k) prod_{j=a..k} p(j)/q(j)``.

    ``P = prod p(j)`` over the range is the weight applied to whatever follows.
    """

    P: int
    Q: int
    T: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.T, self.Q)

    def merge(self, right: "SplitTriple") -> "SplitTriple":
        return SplitTriple(
            P=self.P * right.P,
            Q=self.Q * right.Q,
            T=self.T * right.Q + self.P * right.T,
        )


def binary_split(spec: SeriesSpec, a: int, b: int) -> SplitTriple:
    if not 0 <= a < b:
        raise ValueError(f"need 0 <= a < b, got [{a}, {b})")
    if b - a == 1:
        p = spec.p_at(a)
        return SplitTriple(P=p, Q=spec.q_at(a), T=spec.poly_at(a) * p)
    m = (a + b) // 2
    return binary_split(spec, a, m).merge(binary_split(spec, m, b))


def partial_sum(spec: SeriesSpec, n_terms: int) -> Fraction:
    """Exact ``sum_{k < n_terms} t_k`` via binary splitting."""
    if n_terms == 0:
        return Fraction(0)
    return spec.scale * binary_split(spec, 0, n_terms).value


def _factor_sup(num: LinearFactor, den: LinearFactor, start: int) -> Fraction:
    """sup of |num(k)/den(k)| over real k >= start."""
    (a, b), (c, d) = num, den
    if c == 0:
        if d == 0:
            raise ZeroDivisionError("identically zero denominator factor")
        if a != 0:
            raise ValueError("ratio factor is unbounded")
        return abs(Fraction(b, d))
    if Fraction(-d, c) >= start:
        raise ValueError(f"ratio factor has a pole at k >= {start}")
    # a Moebius function is monotone away from its pole
    return max(abs(Fraction(a * start + b, c * start + d)), abs(Fraction(a, c)))


def ratio_bound(spec: SeriesSpec, start: int) -> Fraction:
    """Exact rational upper bound on ``|t_{k+1}/t_k|`` for all ``k >= start``.

    The ratio ``poly(k+1)/poly(k) * p(k+1)/q(k+1)`` is split into paired
    linear-over-linear factors, each bounded by its value at ``start`` or its
    limit, whichever is larger.
    """
    nums = [(a, a + b) for a, b in spec.poly] + [(a, a + b) for a, b in spec.p]
    dens = list(spec.poly) + [(a, a + b) for a, b in spec.q]
    width = max(len(nums), len(dens))
    nums += [(0, 1)] * (width - len(nums))
    dens += [(0, 1)] * (width - len(dens))
    rho = Fraction(1)
    for nf, df in zip(nums, dens):
        rho *= _factor_sup(nf, df, start)
    return rho


def tail_bound(spec: SeriesSpec, n_terms: int) -> Fraction:
    """Upper bound on ``|sum_{k >= n_terms} t_k|`` of the form ``|t_N| / (1 - rho)``."""
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    rho = ratio_bound(spec, n_terms)
    if rho >= 1:
        raise ValueError(f"{spec.name}: no geometric tail bound (rho = {rho})")
    return abs(spec.term(n_terms)) / (1 - rho)


def terms_for_digits(d: int) -> int:
    return math.ceil(d / DIGITS_PER_TERM) + 2


def guard_bits(d: int) -> int:
    return max(64, math.ceil(3.33 * (d + 2)) + 64)


# ---------------------------------------------------------------------------
# pi from the 1103 series
# ---------------------------------------------------------------------------


def pi_fixed_ramanujan(n_terms: int, scale_bits: int) -> FixedPoint:
    """pi as a FixedPoint from ``n_terms`` terms, tail included in the error."""
    split = binary_split(RAMANUJAN_1103, 0, n_terms)
    s = FixedPoint.from_fraction(RAMANUJAN_1103.scale * split.value, scale_bits)
    s = s.widen(tail_bound(RAMANUJAN_1103, n_terms))
    root2 = sqrt_fixed(FixedPoint.from_int(2, scale_bits), scale_bits)
    inv_pi = root2.mul(s) * 2
    return FixedPoint.from_int(1, scale_bits) / inv_pi


@dataclass(frozen=True)
class PiResult:
    digits: str
    terms: int
    scale_bits: int
    err_ulp: int


def pi_digits_report(d: int, max_attempts: int = 8) -> PiResult:
    if d < 1:
        raise ValueError("need at least one digit")
    target = Fraction(1, 10 ** (d + 2))
    n_terms = terms_for_digits(d)
    while tail_bound(RAMANUJAN_1103, n_terms) * 64 >= target:
        n_terms += 1
    bits = guard_bits(d)
    for _ in range(max_attempts):
        pi = pi_fixed_ramanujan(n_terms, bits)
        if pi.error() < target:
            text = pi.truncated_digits(d)
            if text is not None:
                return PiResult(text, n_terms, bits, pi.err_ulp)
        bits += 64
    raise InvariantError(f"could not pin down {d} digits after {max_attempts} attempts")


def pi_digits(d: int) -> str:
    """pi truncated to ``d`` decimals, ``"3." + d digits``; every digit is proven."""
    return pi_digits_report(d).digits


# ---------------------------------------------------------------------------
# Machin oracle: pi/4 = 4 arctan(1/5) - arctan(1/239)
# ---------------------------------------------------------------------------


def arctan_inv(x: int, scale_bits: int) -> FixedPoint:
    """arctan(1/x) for an integer ``x >= 2``.

    Each term ``floor(2**s / ((2j+1) x**(2j+1)))`` is exact up to flooring,
    and summation stops at the first zero term, whose magnitude bounds the
    alternating tail by one ulp.
    """
    if x < 2:
        raise ValueError("x must be at least 2")
    x2 = x * x
    power = (1 << scale_bits) // x
    total, j = 0, 0
    while True:
        term = power // (2 * j + 1)
        if term == 0:
            break
        total += -term if j % 2 else term
        j += 1
        power //= x2
    return FixedPoint(total, scale_bits, j + 1)


def machin_pi_fixed(scale_bits: int) -> FixedPoint:
    return arctan_inv(5, scale_bits) * 16 - arctan_inv(239, scale_bits) * 4


def machin_pi(d: int, max_attempts: int = 8) -> str:
    if d < 1:
        raise ValueError("need at least one digit")
    bits = guard_bits(d)
    for _ in range(max_attempts):
        text = machin_pi_fixed(bits).truncated_digits(d)
        if text is not None:
            return text
        bits += 64
    raise InvariantError(f"Machin oracle could not pin down {d} digits")


# ---------------------------------------------------------------------------
# 2/pi = sum (-1)^k (4k+1) ((1/2)_k / k!)^3, summed directly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Eq2Partial:
    n: int
    sum: FixedPoint  # S_N = sum_{k=0}^{N} t_k
    next_term: FixedPoint  # |t_{N+1}|


def eq2_partial(n: int, scale_bits: int) -> Eq2Partial:
    """Partial sum through ``k = n`` and the magnitude of the first omitted term.

    ``h_k = ((1/2)_k/k!)**3`` is carried as ``floor(h_k * 2**s)`` via
    ``h_k = h_{k-1} (2k-1)**3 / (2k)**3``; the floored value undershoots by
    less than ``k`` ulps, so term ``k`` is off by less than ``(4k+1) k`` ulps.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    h = 1 << scale_bits
    total = h
    for k in range(1, n + 1):
        odd = 2 * k - 1
        h = h * (odd * odd * odd) // (8 * k * k * k)
        t = (4 * k + 1) * h
        total = total - t if k & 1 else total + t
    err = 4 * n * (n + 1) * (2 * n + 1) // 6 + n * (n + 1) // 2
    k = n + 1
    odd = 2 * k - 1
    h = h * (odd * odd * odd) // (8 * k * k * k)
    nxt = FixedPoint((4 * k + 1) * h, scale_bits, (4 * k + 1) * k)
    return Eq2Partial(n, FixedPoint(total, scale_bits, err), nxt)


def eq2_ratio_decrease_witness() -> Poly2:
    """``(4k+1)(2k+2)**3 - (4k+5)(2k+1)**3``.

    All coefficients are nonnegative (and the constant is positive), so
    ``|t_{k+1}| < |t_k|`` for every ``k >= 0``.
    """
    k = Poly2.k()
    return (4 * k + 1) * (2 * k + 2) ** 3 - (4 * k + 5) * (2 * k + 1) ** 3


def eq2_hyperterm() -> HyperTerm:
    return HyperTerm(
        poch_factors=(
            PochFactor(Fraction(1, 2), "k", 0, 3),
            PochFactor(Fraction(1), "k", 0, -3),
        ),
        alternating=True,
        prefactor=Poly2.linear(1, 0, 4),
    )


@dataclass
class SeriesCheck:
    n: int
    partial: Eq2Partial
    two_over_pi: FixedPoint
    abs_error_upper: Fraction
    bound_satisfied: bool
    bracketed: bool
    summand_match: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.bound_satisfied and self.bracketed and self.summand_match is not False

    def to_dict(self) -> dict:
        mid = abs(self.partial.sum.value() - self.two_over_pi.value())
        d = {
            "N": self.n,
            "partial_sum": self.partial.sum.rounded_str(30),
            "next_term_bound": f"{float(self.partial.next_term.value()):.6e}",
            "two_over_pi_ref": self.two_over_pi.rounded_str(30),
            "abs_error": f"{float(mid):.6e}",
            "bound_satisfied": self.bound_satisfied,
            "bracketed": self.bracketed,
        }
        if self.summand_match is not None:
            d["summand_match"] = self.summand_match
        return d


def two_over_pi_fixed(scale_bits: int) -> FixedPoint:
    """2/pi from the Machin oracle (independent of both series)."""
    return FixedPoint.from_int(2, scale_bits) / machin_pi_fixed(scale_bits)


def bauer_check(n: int, scale_bits: int) -> SeriesCheck:
    """Alternating-series bound and bracketing of 2/pi at ``S_N``."""
    part = eq2_partial(n, scale_bits)
    ref = two_over_pi_fixed(scale_bits)
    s_lo, s_hi = part.sum.interval()
    r_lo, r_hi = ref.interval()
    t_lo, t_hi = part.next_term.interval()
    err_upper = max(abs(s_hi - r_lo), abs(r_hi - s_lo))
    bound_ok = err_upper <= t_lo
    # S_{N+1} = S_N + (-1)^{N+1} |t_{N+1}|; even N overshoots, odd N undershoots
    if n % 2 == 0:
        nxt_hi = s_hi - t_lo
        bracketed = nxt_hi <= r_lo and r_hi <= s_lo
    else:
        nxt_lo = s_lo + t_lo
        bracketed = s_hi <= r_lo and r_hi <= nxt_lo
    return SeriesCheck(n, part, ref, err_upper, bound_ok, bracketed)


@lru_cache(maxsize=1)
def minus_half_summand_matches(k_check: int = 40) -> bool:
    """The terminating summand at ``n = -1/2`` is the 2/pi summand.

    Checked symbolically (equal k-shift quotients after substituting
    ``n = -1/2``, equal value at ``k = 0``) and by exact evaluation for
    ``k < k_check``.
    """
    summand = ramanujan_eq3_summand()
    target = eq2_hyperterm()
    rk = shift_quotients(summand).rk
    rk_half = rk.compose(Poly2.const(Fraction(-1, 2)), Poly2.k())
    if rk_half != shift_quotients(target).rk:
        return False
    if term_eval(summand, Fraction(-1, 2), 0) != term_eval(target, 0, 0):
        return False
    return all(
        term_eval(summand, Fraction(-1, 2), k) == term_eval(target, 0, k) for k in range(k_check)
    )


def limit_check_minus_half(n: int, scale_bits: int) -> SeriesCheck:
    if n < 1:
        raise ValueError("n must be at least 1")
    report = bauer_check(n, scale_bits)
    report.summand_match = minus_half_summand_matches()
    return report
