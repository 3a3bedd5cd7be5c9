"""Hypergeometric terms in (n, k) built from Pochhammer symbols.

A :class:`HyperTerm` is the product

    sign * z**(e*k + c) * prefactor(n, k) * prod (a + s*n)_{index} ** mult

where each Pochhammer factor runs over ``k`` or ``n``.  Terms evaluate exactly
at rational points and produce their shift quotients ``T(n+1,k)/T(n,k)`` and
``T(n,k+1)/T(n,k)`` symbolically.

Values outside the natural support follow the ``1/Gamma`` convention:
``(a)_m = Gamma(a+m)/Gamma(a)``, and every linear factor that vanishes is
treated as an infinitesimal of order one.  A term whose net order is positive
is zero (e.g. ``1/k!`` at negative ``k`` or ``(-n)_k`` for ``k > n``); a
negative net order is a genuine pole.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

from .exact_arith import Number, Poly2, PoleError, RatFunc, as_rational, product

__all__ = [
    "PochFactor",
    "HyperTerm",
    "ShiftQuotients",
    "pochhammer",
    "term_eval",
    "shift_quotients",
    "sum_over_k",
    "parse_hyperterm",
    "ramanujan_eq3",
    "ramanujan_eq3_summand",
]


def pochhammer(a: Number, k: int) -> Fraction:
    """Rising factorial ``a (a+1) ... (a+k-1)``; ``pochhammer(a, 0) == 1``."""
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError("Pochhammer length must be an integer")
    if k < 0:
        raise ValueError(f"Pochhammer length must be nonnegative, got {k}")
    a = as_rational(a)
    p, q = a.numerator, a.denominator
    num = 1
    for j in range(k):
        num *= p + j * q
        if num == 0:
            return Fraction(0)
    return Fraction(num, q ** k)


def _poch_with_order(x: Fraction, m: int) -> Tuple[Fraction, int]:
    """``(x)_m`` for any integer ``m`` as ``(coefficient, order)``.

    Vanishing linear factors contribute a unit infinitesimal, counted in
    ``order`` (positive in the numerator, negative in the denominator).
    """
    p, q = x.numerator, x.denominator
    num, order = 1, 0
    if m >= 0:
        for j in range(m):
            f = p + j * q
            if f:
                num *= f
            else:
                order += 1
        return Fraction(num, q ** m), order
    for j in range(1, -m + 1):
        f = p - j * q
        if f:
            num *= f
        else:
            order -= 1
    return Fraction(q ** (-m), num), order


@dataclass(frozen=True)
class PochFactor:
    """``(offset + n_coeff*n)_{index} ** multiplicity``.

    ``index`` is ``"k"`` or ``"n"``.  Factors indexed by ``n`` may not carry an
    ``n`` shift in their argument.
    """

    offset: Fraction
    index: str = "k"
    n_coeff: int = 0
    multiplicity: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", as_rational(self.offset))
        if self.index not in ("n", "k"):
            raise ValueError(f"Pochhammer index must be 'n' or 'k', got {self.index!r}")
        if self.multiplicity == 0:
            raise ValueError("Pochhammer multiplicity must be nonzero")
        if self.index == "n" and self.n_coeff != 0:
            raise ValueError("an n-indexed Pochhammer factor cannot have an n-shifted argument")

    def argument(self) -> Poly2:
        return Poly2.linear(self.offset, self.n_coeff, 0)

    def argument_text(self) -> str:
        return str(self.argument()).replace(" ", "")


@dataclass(frozen=True)
class HyperTerm:
    poch_factors: Tuple[PochFactor, ...] = ()
    geometric_base: Fraction = Fraction(1)
    geometric_k: int = 0  # exponent pattern e*k + c
    geometric_const: int = 0
    alternating: bool = False  # (-1)**k
    prefactor: Poly2 = field(default_factory=lambda: Poly2.const(1))

    def __post_init__(self) -> None:
        object.__setattr__(self, "poch_factors", tuple(self.poch_factors))
        object.__setattr__(self, "geometric_base", as_rational(self.geometric_base))
        if self.geometric_base == 0:
            raise ValueError("geometric base must be nonzero")

    def __call__(self, n: Number, k: Number) -> Fraction:
        return term_eval(self, n, k)

    def to_dict(self) -> dict:
        return {
            "poch": [
                {
                    "offset": str(f.offset),
                    "n_coeff": f.n_coeff,
                    "index": f.index,
                    "mult": f.multiplicity,
                }
                for f in self.poch_factors
            ],
            "geometric": {
                "base": str(self.geometric_base),
                "exp_k": self.geometric_k,
                "exp_const": self.geometric_const,
            },
            "sign": "k" if self.alternating else "none",
            "prefactor": str(self.prefactor),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HyperTerm":
        geo = d.get("geometric", {})
        return cls(
            poch_factors=tuple(
                PochFactor(
                    offset=Fraction(str(f["offset"])),
                    index=f.get("index", "k"),
                    n_coeff=int(f.get("n_coeff", 0)),
                    multiplicity=int(f.get("mult", 1)),
                )
                for f in d.get("poch", [])
            ),
            geometric_base=Fraction(str(geo.get("base", "1"))),
            geometric_k=int(geo.get("exp_k", 0)),
            geometric_const=int(geo.get("exp_const", 0)),
            alternating=d.get("sign", "none") == "k",
            prefactor=Poly2.parse(str(d.get("prefactor", "1"))),
        )

    def to_text(self) -> str:
        lines = []
        if self.alternating:
            lines.append("sign k")
        if self.geometric_k or self.geometric_const:
            lines.append(f"geom {self.geometric_base} {self.geometric_k} {self.geometric_const}")
        if self.prefactor != 1:
            lines.append(f"prefactor {self.prefactor}")
        for f in self.poch_factors:
            lines.append(f"poch {f.argument_text()} {f.index} {f.multiplicity}")
        return "\n".join(lines) + "\n"


def _eval_with_order(t: HyperTerm, n: Fraction, k: Fraction) -> Tuple[Fraction, int]:
    value = t.prefactor.eval(n, k)
    if value == 0:
        return value, 0
    order = 0
    for f in t.poch_factors:
        length = k if f.index == "k" else n
        if length.denominator != 1:
            raise ValueError(f"Pochhammer length {f.index}={length} is not an integer")
        c, o = _poch_with_order(f.offset + f.n_coeff * n, int(length))
        if f.multiplicity > 0:
            value *= c ** f.multiplicity
        else:
            value /= c ** (-f.multiplicity)
        order += o * f.multiplicity
    if t.geometric_k or t.geometric_const:
        if k.denominator != 1:
            raise ValueError("geometric factor needs an integer k")
        value *= t.geometric_base ** (t.geometric_k * int(k) + t.geometric_const)
    if t.alternating:
        if k.denominator != 1:
            raise ValueError("sign factor needs an integer k")
        if int(k) % 2:
            value = -value
    return value, order


def term_eval(t: HyperTerm, n: Number, k: Number) -> Fraction:
    """Exact value of ``t`` at ``(n, k)``.

    ``k`` (and ``n`` when the term has ``n``-indexed factors) must be an
    integer; ``n`` may otherwise be any rational.  Raises :class:`PoleError`
    when the term is infinite there.
    """
    n, k = as_rational(n), as_rational(k)
    value, order = _eval_with_order(t, n, k)
    if value == 0 or order > 0:
        return Fraction(0)
    if order < 0:
        raise PoleError(f"term has a pole of order {-order} at n={n}, k={k}")
    return value


@dataclass(frozen=True)
class ShiftQuotients:
    rn: RatFunc  # T(n+1,k)/T(n,k)
    rk: RatFunc  # T(n,k+1)/T(n,k)


def _linear_ratio(num: List[Poly2], den: List[Poly2], arg: Poly2, mult: int) -> None:
    if mult > 0:
        num.extend([arg] * mult)
    else:
        den.extend([arg] * (-mult))


@lru_cache(maxsize=64)
def shift_quotients(t: HyperTerm) -> ShiftQuotients:
    """Shift quotients of ``t``, derived from its factor structure."""
    rn_num: List[Poly2] = [t.prefactor.shift(dn=1)]
    rn_den: List[Poly2] = [t.prefactor]
    rk_num: List[Poly2] = [t.prefactor.shift(dk=1)]
    rk_den: List[Poly2] = [t.prefactor]
    k = Poly2.k()
    n = Poly2.n()
    for f in t.poch_factors:
        m = f.multiplicity
        arg = f.argument()
        if f.index == "n":
            # (a)_{n+1}/(a)_n = a + n
            _linear_ratio(rn_num, rn_den, arg + n, m)
            continue
        # (x)_{k+1}/(x)_k = x + k
        _linear_ratio(rk_num, rk_den, arg + k, m)
        # x = a + c*n moves to x + c under n -> n+1
        c = f.n_coeff
        if c > 0:
            for j in range(c):
                _linear_ratio(rn_num, rn_den, arg + k + j, m)
                _linear_ratio(rn_den, rn_num, arg + j, m)
        elif c < 0:
            for j in range(1, -c + 1):
                _linear_ratio(rn_num, rn_den, arg - j, m)
                _linear_ratio(rn_den, rn_num, arg + k - j, m)
    rk_const = Fraction(1)
    if t.geometric_k:
        rk_const *= t.geometric_base ** t.geometric_k
    if t.alternating:
        rk_const = -rk_const
    rn = RatFunc(product(rn_num), product(rn_den))
    rk = RatFunc(product(rk_num) * rk_const, product(rk_den))
    return ShiftQuotients(rn=rn, rk=rk)


def sum_over_k(t: HyperTerm, n: Number, k_start: int, k_stop: int) -> Fraction:
    """Exact ``sum_{k_start <= k < k_stop} t(n, k)``.

    Consecutive terms are generated with the k-shift quotient; a direct
    evaluation is used whenever the recurrence is not applicable.
    """
    rk = shift_quotients(t).rk
    n = as_rational(n)
    total = Fraction(0)
    cur = None
    for k in range(k_start, k_stop):
        if cur is None or cur == 0:
            cur = term_eval(t, n, k)
        total += cur
        if k + 1 < k_stop:
            try:
                cur = cur * rk.eval(n, k) if cur else None
            except PoleError:
                cur = None
    return total


# ---------------------------------------------------------------------------
# Text format
#
#   # comment
#   sign k                       (-1)^k
#   geom <base> <e> <c>          base^(e*k + c)
#   prefactor <polynomial>       e.g. 4*k + 1
#   poch <argument> <k|n> <mult> (argument)_index ^ mult, argument linear in n
#
# Pair files may add ``certificate <rational function>`` and ``name <id>``;
# :func:`parse_hyperterm` ignores keys it does not know only if asked to.
# ---------------------------------------------------------------------------


def _parse_poch(rest: Sequence[str]) -> PochFactor:
    if len(rest) < 3:
        raise ValueError("poch needs: <argument> <k|n> <multiplicity>")
    arg = Poly2.parse("".join(rest[:-2]))
    index, mult = rest[-2], int(rest[-1])
    if arg.degree_in("k") > 0 or arg.degree() > 1:
        raise ValueError(f"Pochhammer argument must be linear in n: {arg}")
    cn = arg.terms.get((1, 0), Fraction(0))
    if cn.denominator != 1:
        raise ValueError(f"n coefficient of a Pochhammer argument must be an integer: {arg}")
    return PochFactor(arg.constant_term(), index, int(cn), mult)


def parse_hyperterm(text: str, extra: Union[Dict[str, str], None] = None) -> HyperTerm:
    """Parse the declarative term format.

    Unknown keywords raise ``ValueError`` unless ``extra`` is a dict, in which
    case their raw values are stored there.
    """
    factors: List[PochFactor] = []
    kw: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        try:
            if key == "poch":
                factors.append(_parse_poch(rest))
            elif key == "sign":
                if rest not in (["k"], ["none"]):
                    raise ValueError("sign must be 'k' or 'none'")
                kw["alternating"] = rest == ["k"]
            elif key == "geom":
                base, e, c = rest
                kw.update(geometric_base=Fraction(base), geometric_k=int(e), geometric_const=int(c))
            elif key == "prefactor":
                kw["prefactor"] = Poly2.parse(" ".join(rest))
            elif extra is not None:
                extra[key] = " ".join(rest)
            else:
                raise ValueError(f"unknown keyword {key!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return HyperTerm(poch_factors=tuple(factors), **kw)


def load_hyperterm_json(text: str) -> HyperTerm:
    return HyperTerm.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Built-in terms
# ---------------------------------------------------------------------------

_EQ3_SUMMAND_FACTORS = (
    PochFactor(Fraction(1, 2), "k", 0, 2),
    PochFactor(Fraction(0), "k", -1, 1),  # (-n)_k
    PochFactor(Fraction(1), "k", 0, -2),  # k!^2
    PochFactor(Fraction(3, 2), "k", 1, -1),  # (3/2 + n)_k
)


def ramanujan_eq3_summand() -> HyperTerm:
    """``(-1)^k (4k+1) (1/2)_k^2 (-n)_k / (k!^2 (3/2+n)_k)``."""
    return HyperTerm(
        poch_factors=_EQ3_SUMMAND_FACTORS,
        alternating=True,
        prefactor=Poly2.linear(1, 0, 4),
    )


def ramanujan_eq3() -> HyperTerm:
    """The summand divided by ``(3/2)_n / n!``, so that ``sum_k F(n,k) = 1``."""
    return HyperTerm(
        poch_factors=_EQ3_SUMMAND_FACTORS
        + (PochFactor(Fraction(3, 2), "n", 0, -1), PochFactor(Fraction(1), "n", 0, 1)),
        alternating=True,
        prefactor=Poly2.linear(1, 0, 4),
    )
