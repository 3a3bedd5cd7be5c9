"""Digits of pi from 1/pi = 2 sqrt(2) sum (4k)! (1103+26390k) / (k!^4 396^(4k) 9801).

Binary splitting sums the first N terms in integers, a geometric tail bound
covers the rest, and every fixed-point step carries an error radius.  Digits
are only printed when the final interval cannot straddle a decimal boundary.

Run:  python demos/03_pi_digits.py
"""
from fractions import Fraction

from wzpi import RAMANUJAN_1103, binary_split, machin_pi, tail_bound
from wzpi.pi_series import pi_digits_report, ratio_bound

# %% The first term alone already gives 1/pi to about 8 digits.
print("t_0 =", RAMANUJAN_1103.scale * binary_split(RAMANUJAN_1103, 0, 1).value)

# %% Term ratio bound and the resulting tail bounds.
print("rho(k >= 0) =", float(ratio_bound(RAMANUJAN_1103, 0)))
for n in (1, 2, 5, 10):
    print(f"tail after {n:>2} terms <= {float(tail_bound(RAMANUJAN_1103, n)):.3e}")

# %% 1000 digits, checked against the Machin formula.
res = pi_digits_report(1000)
print(f"{res.terms} terms, {res.scale_bits} bits, err = {res.err_ulp} ulp")
print(res.digits[:60] + "...")
print("agrees with Machin:", res.digits == machin_pi(1000))
