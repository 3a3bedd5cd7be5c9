"""Both sides of the terminating identity, exactly.

    Gamma(3/2+n) / (Gamma(3/2) Gamma(n+1))
        = sum_k (-1)^k (4k+1) (1/2)_k^2 (-n)_k / (k!^2 (3/2+n)_k)

The left side is the rational (3/2)_n / n!, the right side a finite sum, so
equality for each integer n is a statement about fractions.

Run:  python demos/01_terminating_identity.py
"""
from fractions import Fraction

from wzpi import eq3_check, pochhammer, ramanujan_eq3_summand, term_eval

# %% The summand at n = 3, term by term.  (-n)_k kills every k > n.
summand = ramanujan_eq3_summand()
for k in range(6):
    print(f"k={k}: {term_eval(summand, 3, k)}")

# %% Left side as a Pochhammer quotient.
print("(3/2)_3 / 3! =", pochhammer(Fraction(3, 2), 3) / 6)

# %% Both sides for a range of n.
for n in (0, 1, 2, 5, 10, 40):
    c = eq3_check(n)
    print(f"n={n:>3}  lhs={c.lhs}  equal={c.equal}")
