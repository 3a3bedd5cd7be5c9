import operator
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wzpi.fixedpoint import FixedPoint, sqrt_fixed


def test_sqrt_examples():
    r = sqrt_fixed(FixedPoint.from_int(4, 50), 50)
    assert r.mantissa == 2 << 50 and r.err_ulp <= 1
    r = sqrt_fixed(FixedPoint.from_int(2, 64), 64)
    m = r.mantissa
    assert m * m <= 2 << 128 < (m + 1) ** 2
    assert r.err_ulp <= 2
    z = sqrt_fixed(FixedPoint.from_int(0, 30), 30)
    assert z.mantissa == 0 and z.err_ulp == 0
    with pytest.raises(ValueError):
        sqrt_fixed(FixedPoint.from_int(-1, 30), 30)


def test_from_fraction_and_digits():
    x = FixedPoint.from_fraction(Fraction(1, 3), 40)
    assert x.err_ulp == 1 and x.contains(Fraction(1, 3))
    assert FixedPoint.from_fraction(Fraction(3, 4), 8).err_ulp == 0
    assert FixedPoint.from_fraction(Fraction(314159, 100000), 80).truncated_digits(3) == "3.141"
    # an interval straddling a decimal boundary gives no digits
    assert FixedPoint(1 << 20, 20, 5).truncated_digits(6) is None


def test_division_needs_nonzero_interval():
    with pytest.raises(ZeroDivisionError):
        FixedPoint.from_int(1, 10) / FixedPoint(1, 10, 2)


fracs = st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=1000)
ops = st.lists(st.tuples(st.sampled_from(["add", "sub", "mul", "div", "sqrt"]), fracs), min_size=1, max_size=8)


OPS = {"add": operator.add, "sub": operator.sub, "mul": operator.mul, "div": operator.truediv}


def run_ops(start, steps, s):
    """Apply ``steps`` to a FixedPoint; the exact Fraction shadow is dropped at the first sqrt."""
    x, q = FixedPoint.from_fraction(start, s), start
    for op, v in steps:
        y = FixedPoint.from_fraction(v, s)
        if op == "sqrt":
            if x.mantissa < 0:
                continue
            x, q = sqrt_fixed(x, s), None
            continue
        x = OPS[op](x, y)
        if q is not None:
            q = OPS[op](q, v)
    return x, q


@given(fracs, ops)
@settings(max_examples=200, deadline=None)
def test_error_bound_contains_exact_value(start, steps):
    steps = [(op, v) for op, v in steps if op != "sqrt"]
    x, q = run_ops(start, steps, 96)
    assert x.contains(q)


@given(fracs, ops)
@settings(max_examples=200, deadline=None)
def test_error_bound_vs_64_extra_bits(start, steps):
    lo = run_ops(start, steps, 80)[0]
    hi = run_ops(start, steps, 80 + 64)[0]
    gap = abs(lo.value() - hi.value())
    # both intervals hold the true value, so the refined one sits inside the coarse claim
    assert gap <= lo.error() + hi.error()


def test_rescale_and_mixed_scale():
    a = FixedPoint.from_fraction(Fraction(1, 7), 100)
    b = a.rescale(40)
    assert b.contains(Fraction(1, 7))
    c = a + FixedPoint.from_fraction(Fraction(2, 7), 60)
    assert c.scale_bits == 100 and c.contains(Fraction(3, 7))


def test_widen():
    x = FixedPoint.from_int(1, 10).widen(Fraction(1, 3))
    assert x.contains(Fraction(4, 3)) and x.contains(Fraction(2, 3))
