"""Exact rationals, bivariate polynomials in (n, k) and reduced rational functions.

Rationals are :class:`fractions.Fraction`, which already keeps values reduced
with a positive denominator and a unique zero (``0/1``).  On top of that this
module provides :class:`Poly2` (sparse polynomials over Q in the variables
``n`` and ``k``) and :class:`RatFunc` (quotients of those in a canonical form,
so that equality of rational functions is structural equality).

Term order is graded-lexicographic with ``n > k``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

Rational = Fraction
Number = Union[int, Fraction]
Monomial = Tuple[int, int]  # (degree in n, degree in k)

VARIABLES = ("n", "k")


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at a root of its denominator."""


def as_rational(x: Union[Number, str]) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def rational_arith(a: Number, b: Number, op: str) -> Fraction:
    """Exact ``a op b`` for ``op`` in add/sub/mul/div.

    Division by zero raises :class:`ZeroDivisionError`.
    """
    a, b = as_rational(a), as_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError(f"division of {a} by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def format_rational(q: Number) -> str:
    """Text form ``p/q``, with ``/q`` omitted when the denominator is 1."""
    return str(as_rational(q))


def _grlex_key(m: Monomial) -> Tuple[int, int]:
    return (m[0] + m[1], m[0])


class Poly2:
    """Sparse polynomial in ``n`` and ``k`` with rational coefficients.

    Immutable.  Coefficients are stored in a dict keyed by ``(i, j)`` for the
    monomial ``n**i * k**j``; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash", "_int_form")

    def __init__(self, terms: Union[Mapping[Monomial, Number], None] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in monomial {(i, j)}")
                c = as_rational(c)
                if c:
                    clean[(i, j)] = c
        self._terms = clean
        self._hash = None
        self._int_form = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Number) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def n(cls) -> "Poly2":
        return cls({(1, 0): 1})

    @classmethod
    def k(cls) -> "Poly2":
        return cls({(0, 1): 1})

    @classmethod
    def linear(cls, c0: Number, cn: Number = 0, ck: Number = 0) -> "Poly2":
        """``c0 + cn*n + ck*k``."""
        return cls({(0, 0): c0, (1, 0): cn, (0, 1): ck})

    @classmethod
    def parse(cls, text: str) -> "Poly2":
        f = parse_ratfunc(text)
        if f.den.degree() != 0:
            raise ValueError(f"not a polynomial: {text!r}")
        return f.num * Poly2.const(1 / f.den.constant_term())

    # -- basic access -------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        idx = VARIABLES.index(var)
        return max((m[idx] for m in self._terms), default=-1)

    def constant_term(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=_grlex_key)

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.leading_monomial()]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly2.const(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x: Union["Poly2", Number]) -> "Poly2":
        return x if isinstance(x, Poly2) else Poly2.const(x)

    def __add__(self, other: Union["Poly2", Number]) -> "Poly2":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly2":
        return Poly2({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Union["Poly2", Number]) -> "Poly2":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Number) -> "Poly2":
        return self._coerce(other) - self

    def __mul__(self, other: Union["Poly2", Number]) -> "Poly2":
        other = self._coerce(other)
        out: Dict[Monomial, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly2(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly2":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly2.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- evaluation and substitution ---------------------------------------

    def __call__(self, n: Number, k: Number) -> Fraction:
        return self.eval(n, k)

    def eval(self, n: Number, k: Number) -> Fraction:
        n, k = as_rational(n), as_rational(k)
        if n.denominator == 1 and k.denominator == 1:
            return self._eval_int(n.numerator, k.numerator)
        npow: Dict[int, Fraction] = {}
        kpow: Dict[int, Fraction] = {}
        total = Fraction(0)
        for (i, j), c in self._terms.items():
            if i not in npow:
                npow[i] = n ** i
            if j not in kpow:
                kpow[j] = k ** j
            total += c * npow[i] * kpow[j]
        return total

    def _eval_int(self, n: int, k: int) -> Fraction:
        if self._int_form is None:
            scale = 1
            for c in self._terms.values():
                scale = scale * c.denominator // _gcd(scale, c.denominator)
            coeffs = [(i, j, int(c * scale)) for (i, j), c in self._terms.items()]
            self._int_form = (coeffs, scale)
        coeffs, scale = self._int_form
        total = sum(c * n ** i * k ** j for i, j, c in coeffs)
        return Fraction(total, scale)

    def compose(self, n_image: "Poly2", k_image: "Poly2") -> "Poly2":
        """Substitute ``n -> n_image`` and ``k -> k_image``."""
        npow = [Poly2.const(1)]
        kpow = [Poly2.const(1)]
        out = Poly2()
        for (i, j), c in self._terms.items():
            while len(npow) <= i:
                npow.append(npow[-1] * n_image)
            while len(kpow) <= j:
                kpow.append(kpow[-1] * k_image)
            out = out + npow[i] * kpow[j] * c
        return out

    def shift(self, dn: Number = 0, dk: Number = 0) -> "Poly2":
        """``p(n + dn, k + dk)``."""
        return self.compose(Poly2.linear(dn, 1, 0), Poly2.linear(dk, 0, 1))

    # -- integer structure --------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for c in self._terms.values():
            num_gcd = _gcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: List[str] = []
        for (i, j), c in self.items():
            mono = [v if e == 1 else f"{v}^{e}" for v, e in (("n", i), ("k", j)) if e]
            mag = abs(c)
            if mono:
                body = "*".join(mono) if mag == 1 else "*".join([str(mag)] + mono)
            else:
                body = str(mag)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly2({str(self)!r})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def poly_arith(p: Poly2, q: Poly2, op: str) -> Poly2:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Polynomial GCD over Q[n][k]
#
# A bivariate polynomial is viewed as a polynomial in k whose coefficients are
# univariate polynomials in n (lists of Fractions, lowest degree first).  The
# GCD is the primitive polynomial remainder sequence in k, with contents taken
# by Euclid's algorithm in Q[n].
# ---------------------------------------------------------------------------

UPoly = List[Fraction]


def _u_trim(a: UPoly) -> UPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _u_mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _u_trim(out)


def _u_sub(a: UPoly, b: UPoly) -> UPoly:
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return _u_trim(out)


def _u_divmod(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("univariate division by zero polynomial")
    r = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lb
        q[shift] = f
        for i, y in enumerate(b):
            r[shift + i] -= f * y
        _u_trim(r)
    return _u_trim(q), r


def _u_monic(a: UPoly) -> UPoly:
    if not a:
        return a
    lc = a[-1]
    return [x / lc for x in a]


def _u_gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, _u_divmod(a, b)[1]
    return _u_monic(a)


def _u_divexact(a: UPoly, b: UPoly) -> UPoly:
    q, r = _u_divmod(a, b)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


BPoly = List[UPoly]  # index = degree in k


def _to_bpoly(p: Poly2) -> BPoly:
    out: BPoly = [[] for _ in range(p.degree_in("k") + 1)]
    for (i, j), c in p._terms.items():
        row = out[j]
        if len(row) <= i:
            row.extend([Fraction(0)] * (i + 1 - len(row)))
        row[i] = c
    return out


def _from_bpoly(b: BPoly) -> Poly2:
    return Poly2({(i, j): c for j, row in enumerate(b) for i, c in enumerate(row) if c})


def _b_trim(a: BPoly) -> BPoly:
    while a and not a[-1]:
        a.pop()
    return a


def _b_content(a: BPoly) -> UPoly:
    g: UPoly = []
    for row in a:
        if row:
            g = _u_gcd(g, row) if g else _u_monic(list(row))
            if len(g) == 1:
                break
    return g


def _b_scale_div(a: BPoly, c: UPoly) -> BPoly:
    return [_u_divexact(row, c) if row else [] for row in a]


def _b_primitive(a: BPoly) -> BPoly:
    return _b_scale_div(a, _b_content(a)) if a else a


def _b_prem(a: BPoly, b: BPoly) -> BPoly:
    """Pseudo-remainder of ``a`` by ``b`` as polynomials in k."""
    r = [list(row) for row in a]
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lr = r[-1]
        r = [_u_mul(row, lb) for row in r]
        for i, row in enumerate(b):
            r[dr - db + i] = _u_sub(r[dr - db + i], _u_mul(lr, row))
        _b_trim(r)
    return r


def _b_divexact(a: BPoly, b: BPoly) -> BPoly:
    r = [list(row) for row in a]
    db = len(b) - 1
    lb = b[-1]
    q: BPoly = [[] for _ in range(max(0, len(a) - db))]
    while r and len(r) - 1 >= db:
        dr = len(r) - 1
        f = _u_divexact(r[-1], lb)
        q[dr - db] = f
        for i, row in enumerate(b):
            r[dr - db + i] = _u_sub(r[dr - db + i], _u_mul(f, row))
        _b_trim(r)
    if r:
        raise ArithmeticError("inexact bivariate division")
    return _b_trim(q)


def poly_gcd(p: Poly2, q: Poly2) -> Poly2:
    """GCD in Q[n, k], normalised to coprime integer coefficients with a
    positive grlex-leading coefficient.  ``gcd(0, 0) = 0``."""
    if p.is_zero() and q.is_zero():
        return Poly2()
    if p.is_zero():
        return _canonical_scale(q)
    if q.is_zero():
        return _canonical_scale(p)
    a, b = _to_bpoly(p), _to_bpoly(q)
    cont = _u_gcd(_b_content(a), _b_content(b))
    a, b = _b_primitive(a), _b_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _b_prem(a, b)
        a, b = b, (_b_primitive(r) if r else r)
        if not b:
            break
    if b:
        # b is a nonzero constant in k: the k-part of the gcd is trivial
        g: BPoly = [[Fraction(1)]]
    else:
        g = _b_primitive(a)
    g = [_u_mul(row, cont) for row in g]
    return _canonical_scale(_from_bpoly(_b_trim(g)))


def poly_divexact(p: Poly2, d: Poly2) -> Poly2:
    """``p / d`` when ``d`` divides ``p`` exactly; ArithmeticError otherwise."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return Poly2()
    return _from_bpoly(_b_divexact(_to_bpoly(p), _to_bpoly(d)))


def _canonical_scale(p: Poly2) -> Poly2:
    if p.is_zero():
        return p
    c = p.content()
    if p.leading_coefficient() < 0:
        c = -c
    return p * (1 / c)


class RatFunc:
    """Reduced quotient ``num/den`` of :class:`Poly2` values.

    Canonical form: ``gcd(num, den) = 1``, ``den`` has coprime integer
    coefficients and a positive grlex-leading coefficient, and zero is ``0/1``.
    Two rational functions are equal iff their canonical forms coincide.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[Poly2, Number], den: Union[Poly2, Number] = 1):
        num = num if isinstance(num, Poly2) else Poly2.const(num)
        den = den if isinstance(den, Poly2) else Poly2.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly2(), Poly2.const(1)
            return
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num, den = poly_divexact(num, g), poly_divexact(den, g)
        c = den.content()
        if den.leading_coefficient() < 0:
            c = -c
        self.num, self.den = num * (1 / c), den * (1 / c)

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        return parse_ratfunc(text)

    @classmethod
    def _raw(cls, num: Poly2, den: Poly2) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Poly2)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    @staticmethod
    def _coerce(x: Union["RatFunc", Poly2, Number]) -> "RatFunc":
        return x if isinstance(x, RatFunc) else RatFunc(x)

    def __add__(self, other: Union["RatFunc", Poly2, Number]) -> "RatFunc":
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other: Union["RatFunc", Poly2, Number]) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Union[Poly2, Number]) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other: Union["RatFunc", Poly2, Number]) -> "RatFunc":
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["RatFunc", Poly2, Number]) -> "RatFunc":
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Union[Poly2, Number]) -> "RatFunc":
        return self._coerce(other) / self

    def __pow__(self, e: int) -> "RatFunc":
        if e >= 0:
            return RatFunc._raw(self.num ** e, self.den ** e) if e else RatFunc(1)
        return RatFunc(1) / (self ** (-e))

    def eval(self, n: Number, k: Number) -> Fraction:
        d = self.den.eval(n, k)
        if d == 0:
            raise PoleError(f"pole of {self} at n={n}, k={k}")
        return self.num.eval(n, k) / d

    __call__ = eval

    def _eval_int(self, n: int, k: int) -> Fraction:
        if self._int_form is None:
            scale = 1
            for c in self._terms.values():
                scale = scale * c.denominator // _gcd(scale, c.denominator)
            coeffs = [(i, j, int(c * scale)) for (i, j), c in self._terms.items()]
            self._int_form = (coeffs, scale)
        coeffs, scale = self._int_form
        total = sum(c * n ** i * k ** j for i, j, c in coeffs)
        return Fraction(total, scale)

    def compose(self, n_image: Poly2, k_image: Poly2) -> "RatFunc":
        return RatFunc(self.num.compose(n_image, k_image), self.den.compose(n_image, k_image))

    def shift(self, dn: Number = 0, dk: Number = 0) -> "RatFunc":
        return RatFunc(self.num.shift(dn, dk), self.den.shift(dn, dk))

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


def ratfunc_normalize(num: Poly2, den: Poly2) -> RatFunc:
    return RatFunc(num, den)


def ratfunc_eval(f: RatFunc, n: Number, k: Number) -> Fraction:
    return f.eval(n, k)


# ---------------------------------------------------------------------------
# Parsing: expressions over n, k with + - * / ^ and parentheses.
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([nk])|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> List[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> Union[str, None]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError(f"unexpected end of {self.text!r}")
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise ValueError(f"expected {tok!r}, got {got!r} in {self.text!r}")

    def parse(self) -> RatFunc:
        if not self.toks:
            raise ValueError("empty expression")
        f = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input {self.peek()!r} in {self.text!r}")
        return f

    def expr(self) -> RatFunc:
        f = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> RatFunc:
        f = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            g = self.unary()
            f = f * g if op == "*" else f / g
        return f

    def unary(self) -> RatFunc:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ValueError(f"exponent must be a nonnegative integer in {self.text!r}")
            base = base ** int(tok)
        return base

    def atom(self) -> RatFunc:
        tok = self.take()
        if tok.isdigit():
            return RatFunc(int(tok))
        if tok == "n":
            return RatFunc(Poly2.n())
        if tok == "k":
            return RatFunc(Poly2.k())
        if tok == "(":
            f = self.expr()
            self.expect(")")
            return f
        raise ValueError(f"unexpected token {tok!r} in {self.text!r}")


def parse_ratfunc(text: str) -> RatFunc:
    """Parse the text form produced by ``str(Poly2)`` / ``str(RatFunc)``."""
    return _Parser(text).parse()


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def product(factors: Iterable[Poly2]) -> Poly2:
    out = Poly2.const(1)
    for f in factors:
        out = out * f
    return out
