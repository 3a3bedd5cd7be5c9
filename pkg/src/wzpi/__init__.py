"""Exact verification of a WZ proof of Ramanujan's 2/pi identity, and digits of
pi from Ramanujan's 1103 + 26390k series with proven error bounds."""

from .exact_arith import Poly2, PoleError, RatFunc, parse_ratfunc, poly_gcd
from .fixedpoint import FixedPoint, sqrt_fixed
from .hyperterm import (
    HyperTerm,
    PochFactor,
    ShiftQuotients,
    parse_hyperterm,
    pochhammer,
    ramanujan_eq3,
    ramanujan_eq3_summand,
    shift_quotients,
    term_eval,
)
from .pi_series import (
    RAMANUJAN_1103,
    SeriesSpec,
    binary_split,
    eq2_partial,
    limit_check_minus_half,
    machin_pi,
    pi_digits,
    tail_bound,
)
from .wz_verify import (
    VerifyReport,
    WZPair,
    eq3_check,
    ramanujan_eq3_pair,
    telescope_constant,
    verify_grid,
    verify_symbolic,
)

__version__ = "0.1.0"
