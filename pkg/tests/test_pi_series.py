import math
from fractions import Fraction
from math import factorial

import pytest

from wzpi.fixedpoint import FixedPoint, sqrt_fixed
from wzpi.hyperterm import pochhammer
from wzpi.pi_series import (
    BAUER_2_OVER_PI,
    DIGITS_PER_TERM,
    RAMANUJAN_1103,
    arctan_inv,
    bauer_check,
    binary_split,
    eq2_partial,
    eq2_ratio_decrease_witness,
    limit_check_minus_half,
    machin_pi,
    machin_pi_fixed,
    minus_half_summand_matches,
    partial_sum,
    pi_digits,
    pi_digits_report,
    ratio_bound,
    tail_bound,
    terms_for_digits,
)

PI_50 = "3.14159265358979323846264338327950288419716939937510"


def series_term(k):
    """Term of the 1/pi series written with Pochhammer symbols."""
    poch = pochhammer(Fraction(1, 4), k) * pochhammer(Fraction(1, 2), k) * pochhammer(Fraction(3, 4), k)
    return poch / factorial(k) ** 3 * (1103 + 26390 * k) * Fraction(1, 99) ** (4 * k + 2)


def alt_term(k):
    return (-1) ** k * (4 * k + 1) * (pochhammer(Fraction(1, 2), k) / factorial(k)) ** 3


def test_integer_form_matches_pochhammer_form():
    for k in range(51):
        assert (
            pochhammer(Fraction(1, 4), k) * pochhammer(Fraction(1, 2), k) * pochhammer(Fraction(3, 4), k)
            / factorial(k) ** 3
            == Fraction(factorial(4 * k), 256 ** k * factorial(k) ** 4)
        )
        assert RAMANUJAN_1103.term(k) == series_term(k)


def test_binary_split_examples():
    assert RAMANUJAN_1103.scale * binary_split(RAMANUJAN_1103, 0, 1).value == Fraction(1103, 9801)
    assert partial_sum(RAMANUJAN_1103, 2) == series_term(0) + series_term(1)
    folded = binary_split(RAMANUJAN_1103, 0, 1)
    for k in range(1, 5):
        folded = folded.merge(binary_split(RAMANUJAN_1103, k, k + 1))
    assert folded == binary_split(RAMANUJAN_1103, 0, 5)
    with pytest.raises(ValueError):
        binary_split(RAMANUJAN_1103, 3, 3)


def test_binary_split_prefixes_bit_exact():
    for N in range(1, 31):
        assert partial_sum(RAMANUJAN_1103, N) == sum(series_term(k) for k in range(N))
        assert partial_sum(BAUER_2_OVER_PI, N) == sum(alt_term(k) for k in range(N))


def test_merge_law_on_subranges():
    for a, m, b in [(0, 3, 7), (2, 5, 6), (4, 9, 13)]:
        left, right = binary_split(RAMANUJAN_1103, a, m), binary_split(RAMANUJAN_1103, m, b)
        merged = left.merge(right)
        assert merged.value == left.value + Fraction(left.P, left.Q) * right.value


def test_ratio_bound():
    rho = ratio_bound(RAMANUJAN_1103, 0)
    assert rho == Fraction(256 * 27493, 1103 * 396 ** 4)
    assert rho < Fraction(3, 10 ** 7)
    # the bound dominates the true ratio on a window
    for k in range(200):
        assert abs(series_term(k + 1) / series_term(k)) <= rho
    with pytest.raises(ValueError):
        tail_bound(BAUER_2_OVER_PI, 5)


def test_tail_bound_dominates_exact_tail():
    for N in range(1, 6):
        window = sum(series_term(k) for k in range(N, N + 10))
        assert tail_bound(RAMANUJAN_1103, N) >= abs(window)


def test_digit_gain():
    assert DIGITS_PER_TERM == pytest.approx(7.98, abs=0.01)
    assert terms_for_digits(1000) == math.ceil(1000 / 7.98) + 2


def test_pi_digits_small():
    assert pi_digits(10) == "3.1415926535"
    assert machin_pi(10) == "3.1415926535"
    assert pi_digits(50) == machin_pi(50) == PI_50
    assert pi_digits(1) == "3.1"


def test_one_term_accuracy():
    s = 200
    pi = machin_pi_fixed(s)
    inv_pi = FixedPoint.from_int(1, s) / pi
    one_term = sqrt_fixed(FixedPoint.from_int(2, s), s).mul(FixedPoint.from_fraction(Fraction(2 * 1103, 9801), s))
    lo_a, hi_a = inv_pi.interval()
    lo_b, hi_b = one_term.interval()
    assert max(hi_a - lo_b, hi_b - lo_a) < Fraction(1, 10 ** 7)


def test_pi_oracle_agreement_100_1000():
    for d in (100, 1000):
        rep = pi_digits_report(d)
        assert rep.digits == machin_pi(d)
        assert len(rep.digits) == d + 2
        assert rep.err_ulp < (1 << rep.scale_bits) // 10 ** (d + 2)


def test_leibniz_partial_sums_bracket_quarter_pi():
    pi = machin_pi_fixed(128)
    lo, hi = pi.interval()
    s = Fraction(0)
    prev = None
    for j in range(40):
        s += Fraction((-1) ** j, 2 * j + 1)
        if prev is not None:
            a, b = sorted((prev, s))
            assert a <= lo / 4 and hi / 4 <= b
        prev = s


def test_arctan_inv_bracket():
    a = arctan_inv(5, 100)
    lo, hi = a.interval()
    # alternating series: consecutive partial sums bracket arctan(1/5)
    assert Fraction(1, 5) - Fraction(1, 375) < lo and hi < Fraction(1, 5)
    assert float(a.value()) == pytest.approx(math.atan(0.2), rel=1e-15)


def test_eq2_partial_examples():
    assert eq2_partial(0, 64).sum.value() == 1
    p1 = eq2_partial(1, 64)
    assert p1.sum.contains(Fraction(3, 8))
    assert p1.next_term.contains(abs(alt_term(2)))


def test_eq2_partial_against_exact_sums():
    for N in (0, 1, 2, 5, 17, 40):
        p = eq2_partial(N, 80)
        assert p.sum.contains(sum(alt_term(k) for k in range(N + 1)))
        assert p.next_term.contains(abs(alt_term(N + 1)))


def test_bracket_first_sums():
    ref_lo, ref_hi = (FixedPoint.from_int(2, 128) / machin_pi_fixed(128)).interval()
    assert Fraction(3, 8) <= ref_lo and ref_hi <= 1


def test_alt_term_magnitudes_decrease():
    w = eq2_ratio_decrease_witness()
    assert w.has_nonnegative_coefficients() and w.constant_term() > 0
    for k in range(10 ** 4 + 1):
        # |t_{k+1}|/|t_k| = (4k+5)/(4k+1) ((2k+1)/(2k+2))^3
        assert (4 * k + 5) * (2 * k + 1) ** 3 < (4 * k + 1) * (2 * k + 2) ** 3


def test_bracketing_many_m():
    for N in range(1, 60):
        assert bauer_check(N, 96).bracketed


def test_limit_check():
    assert minus_half_summand_matches()
    rep = limit_check_minus_half(10 ** 4, 128)
    assert rep.bound_satisfied and rep.bracketed and rep.summand_match
    assert float(rep.partial.next_term.value()) == pytest.approx(7.2e-3, rel=0.01)
    assert rep.to_dict()["N"] == 10 ** 4


@pytest.mark.slow
def test_limit_check_million():
    rep = limit_check_minus_half(10 ** 6, 160)
    assert rep.ok
    assert rep.abs_error_upper < Fraction(1, 1000)
