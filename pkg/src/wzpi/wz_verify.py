"""Verification of WZ pairs ``(F, G = R*F)``.

The identity under test is

    F(n+1, k) - F(n, k) = s * (G(n, k) - G(n, k-1))

for a sign ``s``.  ``s = +1`` is the orientation as printed for the built-in
pair ("as-printed"); ``s = -1`` is "sign-flipped".  Both are tried, and the
report says which one holds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .exact_arith import Poly2, PoleError, RatFunc
from .hyperterm import (
    HyperTerm,
    parse_hyperterm,
    pochhammer,
    ramanujan_eq3,
    ramanujan_eq3_summand,
    shift_quotients,
    sum_over_k,
    term_eval,
)

AS_PRINTED = "as-printed"
SIGN_FLIPPED = "sign-flipped"
FAILS = "fails"

_ORIENTATIONS = ((AS_PRINTED, 1), (SIGN_FLIPPED, -1))

RAMANUJAN_EQ3_CERTIFICATE = "(2*k + 1)^2/((2*n + 2*k + 3)*(4*k + 1))"


@dataclass(frozen=True)
class WZPair:
    f: HyperTerm
    certificate: RatFunc  # G = certificate * F

    def __post_init__(self) -> None:
        c = self.certificate
        if not isinstance(c, RatFunc):
            c = RatFunc.parse(c) if isinstance(c, str) else RatFunc(c)
        object.__setattr__(self, "certificate", RatFunc(c.num, c.den))

    def g(self, n, k) -> Fraction:
        """``G(n,k)``; raises :class:`PoleError` where the certificate has a pole."""
        r = self.certificate.eval(n, k)
        return r * term_eval(self.f, n, k)

    def negated(self) -> "WZPair":
        return WZPair(self.f, -self.certificate)


@dataclass
class VerifyReport:
    orientation: str
    symbolic_witness: Optional[Poly2] = None
    grid_points_checked: Optional[int] = None
    grid_points_skipped_at_poles: Optional[int] = None
    grid_points_failed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.orientation not in (AS_PRINTED, SIGN_FLIPPED, FAILS):
            raise ValueError(f"bad orientation {self.orientation!r}")
        if self.orientation != FAILS and self.symbolic_witness is not None:
            if not self.symbolic_witness.is_zero():
                raise AssertionError("orientation holds but witness is nonzero")

    @property
    def symbolic_zero(self) -> Optional[bool]:
        if self.symbolic_witness is None:
            return None
        return self.symbolic_witness.is_zero()

    @property
    def ok(self) -> bool:
        return (
            self.orientation != FAILS
            and self.symbolic_zero is not False
            and not self.grid_points_failed
        )

    def merge(self, other: "VerifyReport") -> "VerifyReport":
        """Combine a symbolic and a grid report; disagreeing orientations fail."""
        orientation = self.orientation if self.orientation == other.orientation else FAILS
        pick = lambda a, b: a if a is not None else b  # noqa: E731
        return VerifyReport(
            orientation=orientation,
            symbolic_witness=pick(self.symbolic_witness, other.symbolic_witness),
            grid_points_checked=pick(self.grid_points_checked, other.grid_points_checked),
            grid_points_skipped_at_poles=pick(
                self.grid_points_skipped_at_poles, other.grid_points_skipped_at_poles
            ),
            grid_points_failed=pick(self.grid_points_failed, other.grid_points_failed),
        )

    def to_dict(self) -> dict:
        grid = None
        if self.grid_points_checked is not None:
            grid = {
                "checked": self.grid_points_checked,
                "skipped": self.grid_points_skipped_at_poles,
                "failed": self.grid_points_failed,
            }
        return {"orientation": self.orientation, "symbolic_zero": self.symbolic_zero, "grid": grid}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def wz_residual(pair: WZPair, sign: int) -> RatFunc:
    """``(F(n+1,k) - F(n,k) - sign*(G(n,k) - G(n,k-1))) / F(n,k)`` as a rational function."""
    q = shift_quotients(pair.f)
    r = pair.certificate
    # G(n,k-1)/F(n,k) = R(n,k-1) * F(n,k-1)/F(n,k) = R(n,k-1) / rk(n,k-1)
    lhs = q.rn - 1
    rhs = r - r.shift(dk=-1) / q.rk.shift(dk=-1)
    return lhs - rhs * sign


def verify_symbolic(pair: WZPair) -> VerifyReport:
    """Decide the WZ identity as an identity of rational functions.

    The witness is the numerator of the residual with denominators cleared;
    it is the zero polynomial exactly when the orientation holds identically.
    """
    witnesses: Dict[str, Poly2] = {}
    for name, sign in _ORIENTATIONS:
        res = wz_residual(pair, sign)
        witnesses[name] = res.num
        if res.is_zero():
            return VerifyReport(orientation=name, symbolic_witness=res.num)
    return VerifyReport(orientation=FAILS, symbolic_witness=witnesses[AS_PRINTED])


def _grid_point(pair: WZPair, n: int, k: int) -> Optional[Tuple[bool, bool]]:
    """Which orientations hold at ``(n, k)``; ``None`` if a certificate pole is hit."""
    try:
        g_here = pair.g(n, k)
        g_prev = pair.g(n, k - 1)
    except PoleError:
        return None
    lhs = term_eval(pair.f, n + 1, k) - term_eval(pair.f, n, k)
    d = g_here - g_prev
    return lhs == d, lhs == -d


def verify_grid(pair: WZPair, n_max: int, k_max: int) -> VerifyReport:
    """Check the identity by exact evaluation on ``0 <= n <= n_max, 0 <= k <= k_max``."""
    if n_max < 0 or k_max < 0:
        raise ValueError("grid bounds must be nonnegative")
    checked = skipped = 0
    fail_counts = {AS_PRINTED: 0, SIGN_FLIPPED: 0}
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            res = _grid_point(pair, n, k)
            if res is None:
                skipped += 1
                continue
            checked += 1
            fail_counts[AS_PRINTED] += not res[0]
            fail_counts[SIGN_FLIPPED] += not res[1]
    orientation = FAILS
    for name, _ in _ORIENTATIONS:
        if fail_counts[name] == 0:
            orientation = name
            break
    failed = 0 if orientation != FAILS else min(fail_counts.values())
    return VerifyReport(
        orientation=orientation,
        grid_points_checked=checked,
        grid_points_skipped_at_poles=skipped,
        grid_points_failed=failed,
    )


def certificate_support_ok(pair: WZPair, n_max: int) -> bool:
    """``G(n,-1) = 0`` and ``G(n,k) = 0`` for ``n < k <= n + 3``, for ``0 <= n <= n_max``."""
    for n in range(n_max + 1):
        if pair.g(n, -1) != 0:
            return False
        for k in range(n + 1, n + 4):
            if pair.g(n, k) != 0:
                return False
    return True


def telescope_constant(pair: WZPair, n: int, k_max: Optional[int] = None) -> Fraction:
    """``sum_{k=0}^{k_max} F(n,k)`` with ``k_max = n`` by default (terminating support)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    stop = (n if k_max is None else k_max) + 1
    return sum_over_k(pair.f, n, 0, stop)


@dataclass(frozen=True)
class Eq3Check:
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "equal": self.equal}


def eq3_check(n: int) -> Eq3Check:
    """Both sides of the terminating identity at integer ``n >= 0``.

    The left side ``Gamma(3/2+n) / (Gamma(3/2) Gamma(n+1))`` is the exact
    rational ``(3/2)_n / n!``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    fact = 1
    for j in range(2, n + 1):
        fact *= j
    lhs = pochhammer(Fraction(3, 2), n) / fact
    rhs = sum_over_k(ramanujan_eq3_summand(), n, 0, n + 1)
    return Eq3Check(lhs, rhs)


def ramanujan_eq3_pair() -> WZPair:
    return WZPair(ramanujan_eq3(), RatFunc.parse(RAMANUJAN_EQ3_CERTIFICATE))


BUILTIN_PAIRS = {"ramanujan-eq3": ramanujan_eq3_pair}


def get_pair(name: str) -> WZPair:
    try:
        return BUILTIN_PAIRS[name]()
    except KeyError:
        raise KeyError(f"unknown pair {name!r}; known: {', '.join(sorted(BUILTIN_PAIRS))}") from None


def parse_pair(text: str) -> WZPair:
    """A WZ pair in the term text format plus a ``certificate <ratfunc>`` line.

    JSON input (an object with the term fields and ``"certificate"``) is
    accepted too.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        d = json.loads(text)
        if "certificate" not in d:
            raise ValueError("pair JSON needs a 'certificate' entry")
        return WZPair(HyperTerm.from_dict(d), RatFunc.parse(str(d["certificate"])))
    extra: Dict[str, str] = {}
    term = parse_hyperterm(text, extra)
    unknown = set(extra) - {"certificate", "name"}
    if unknown:
        raise ValueError(f"unknown keyword(s) in pair file: {', '.join(sorted(unknown))}")
    if "certificate" not in extra:
        raise ValueError("pair file needs a 'certificate' line")
    return WZPair(term, RatFunc.parse(extra["certificate"]))
