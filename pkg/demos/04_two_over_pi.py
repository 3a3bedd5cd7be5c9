"""The non-terminating series 2/pi = sum (-1)^k (4k+1) ((1/2)_k / k!)^3.

Setting n = -1/2 in the terminating summand gives exactly this summand.  The
series converges like N^(-1/2), and the alternating-series bound says the
error of S_N is at most the first omitted term.

Run:  python demos/04_two_over_pi.py
"""
from wzpi.pi_series import eq2_ratio_decrease_witness, limit_check_minus_half, minus_half_summand_matches

# %% Substitution n = -1/2 recovers the 2/pi summand (symbolically and term by term).
print("summand match:", minus_half_summand_matches())

# %% Term magnitudes decrease: this polynomial has nonnegative coefficients.
print("(4k+1)(2k+2)^3 - (4k+5)(2k+1)^3 =", eq2_ratio_decrease_witness())

# %% Error against the Machin reference, and the bound it must respect.
for n in (10, 100, 1000, 10_000, 100_000):
    d = limit_check_minus_half(n, 160).to_dict()
    print(f"N={n:>6}  |S_N - 2/pi| = {d['abs_error']}  <=  |t_(N+1)| = {d['next_term_bound']}  bracketed={d['bracketed']}")
