import json
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wzpi.exact_arith import Poly2, PoleError, RatFunc
from wzpi.hyperterm import (
    HyperTerm,
    PochFactor,
    parse_hyperterm,
    pochhammer,
    ramanujan_eq3,
    ramanujan_eq3_summand,
    shift_quotients,
    sum_over_k,
    term_eval,
)

n, k = Poly2.n(), Poly2.k()
F = ramanujan_eq3()


def half_poch(m):
    """(1/2)_m = (2m)! / (4^m m!)."""
    return Fraction(factorial(2 * m), 4 ** m * factorial(m))


def F_oracle(nn, kk):
    """Direct formula with factorials; zero outside 0 <= k <= n."""
    if kk < 0 or kk > nn:
        return Fraction(0)
    neg_n = (-1) ** kk * Fraction(factorial(nn), factorial(nn - kk))  # (-n)_k
    # (3/2+n)_k = (3/2)_{n+k} / (3/2)_n,  (3/2)_m = (2m+1)! / (4^m m!)
    three_half = lambda m: Fraction(factorial(2 * m + 1), 4 ** m * factorial(m))  # noqa: E731
    summand = (-1) ** kk * (4 * kk + 1) * half_poch(kk) ** 2 * neg_n
    summand /= factorial(kk) ** 2 * (three_half(nn + kk) / three_half(nn))
    lhs = three_half(nn) / factorial(nn)
    return summand / lhs


def test_pochhammer_examples():
    assert pochhammer(Fraction(1, 2), 0) == 1
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(-2, 3) == 0
    with pytest.raises(ValueError):
        pochhammer(1, -1)


@given(st.fractions(min_value=-10, max_value=10, max_denominator=20), st.integers(0, 50))
def test_pochhammer_recurrence(a, m):
    assert pochhammer(a, m + 1) == pochhammer(a, m) * (a + m)


def test_term_eval_examples():
    assert F(0, 0) == 1
    assert F(1, 1) == Fraction(1, 3)
    assert F(0, -1) == 0
    assert term_eval(ramanujan_eq3_summand(), 1, 1) == Fraction(1, 2)


def test_term_eval_matches_oracle():
    for nn in range(0, 12):
        for kk in range(-3, nn + 4):
            assert term_eval(F, nn, kk) == F_oracle(nn, kk), (nn, kk)


def test_termination():
    for nn in range(0, 20):
        for kk in range(nn + 1, nn + 6):
            assert F(nn, kk) == 0


def test_builtin_shift_quotients():
    q = shift_quotients(F)
    expected_rn = RatFunc((n + 1) ** 2, (n + 1 - k) * (n + k + Fraction(3, 2)))
    assert q.rn == expected_rn
    assert q.rn.eval(0, 0) == F(1, 0) / F(0, 0) == Fraction(2, 3)
    assert q.rk.eval(1, 0) == F(1, 1) / F(1, 0) == Fraction(1, 2)


def test_quotient_consistency_grid():
    q = shift_quotients(F)
    for nn in range(16):
        for kk in range(nn + 1):
            here = F(nn, kk)
            if here != 0 and F(nn + 1, kk) != 0:
                assert q.rn.eval(nn, kk) * here == F(nn + 1, kk)
            if here != 0 and F(nn, kk + 1) != 0:
                assert q.rk.eval(nn, kk) * here == F(nn, kk + 1)


def test_constant_term_quotients():
    q = shift_quotients(HyperTerm())
    assert q.rn == 1 and q.rk == 1


def test_general_term_quotients():
    # T = 2^(3k+1) (k - n) (n+2)_k (1/3 - 2n)_k / (5/2)_n, alternating
    t = HyperTerm(
        poch_factors=(
            PochFactor(2, "k", 1, 1),
            PochFactor(Fraction(1, 3), "k", -2, 1),
            PochFactor(Fraction(5, 2), "n", 0, -1),
        ),
        geometric_base=2,
        geometric_k=3,
        geometric_const=1,
        alternating=True,
        prefactor=k - n,
    )
    q = shift_quotients(t)
    for nn in range(6):
        for kk in range(6):
            here = t(nn, kk)
            if here == 0:
                continue
            try:
                assert q.rn.eval(nn, kk) * here == t(nn + 1, kk)
                assert q.rk.eval(nn, kk) * here == t(nn, kk + 1)
            except PoleError:
                pass


def test_reciprocal_pole_is_error():
    t = HyperTerm(poch_factors=(PochFactor(-2, "k", 0, -1),))
    assert t(0, 2) == Fraction(1, 2)
    with pytest.raises(PoleError):
        t(0, 3)


def test_sum_over_k_matches_direct():
    s = ramanujan_eq3_summand()
    for nn in range(10):
        direct = sum(term_eval(s, nn, kk) for kk in range(nn + 1))
        assert sum_over_k(s, nn, 0, nn + 1) == direct


def test_text_format_round_trip():
    text = """
    # F(n,k) for the terminating identity
    sign k
    prefactor 4*k + 1
    poch 1/2 k 2
    poch -n k 1
    poch 1 k -2
    poch 3/2+n k -1
    poch 3/2 n -1
    poch 1 n 1
    """
    t = parse_hyperterm(text)
    assert t == F
    assert parse_hyperterm(F.to_text()) == F
    with pytest.raises(ValueError):
        parse_hyperterm("poch 1/2 j 1")
    with pytest.raises(ValueError):
        parse_hyperterm("wibble 3")


def test_json_round_trip():
    d = F.to_dict()
    assert HyperTerm.from_dict(json.loads(json.dumps(d))) == F
    assert d["sign"] == "k" and d["prefactor"] == "4*k + 1"


def test_invalid_factors():
    with pytest.raises(ValueError):
        PochFactor(1, "k", 0, 0)
    with pytest.raises(ValueError):
        PochFactor(1, "n", 1, 1)
    with pytest.raises(ValueError):
        HyperTerm(geometric_base=0)
