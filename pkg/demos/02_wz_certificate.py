"""Checking the WZ certificate  G(n,k) = (2k+1)^2 / ((2n+2k+3)(4k+1)) F(n,k).

F(n,k) is the summand divided by the left side, so sum_k F(n,k) should be 1.
The verifier divides the WZ identity by F(n,k), turning it into an identity
between rational functions of n and k, and tries both signs of G.

Run:  python demos/02_wz_certificate.py
"""
from wzpi import ramanujan_eq3_pair, shift_quotients, telescope_constant, verify_grid, verify_symbolic

pair = ramanujan_eq3_pair()

# %% Shift quotients of F, computed from its Pochhammer structure.
q = shift_quotients(pair.f)
print("F(n+1,k)/F(n,k) =", q.rn)
print("F(n,k+1)/F(n,k) =", q.rk)
print("certificate R   =", pair.certificate)

# %% Symbolic check.  The identity holds with G negated relative to
#    F(n+1,k) - F(n,k) = G(n,k) - G(n,k-1); the telescoped sum is zero either way.
sym = verify_symbolic(pair)
print("symbolic:", sym.orientation, "witness =", sym.symbolic_witness)

# %% The same verdict from exact evaluation on a grid.
print("grid:", verify_grid(pair, 15, 15).to_json())

# %% A certificate with the opposite sign matches the printed orientation.
print("negated:", verify_symbolic(pair.negated()).orientation)

# %% Telescoping: sum_k F(n,k) does not depend on n, and is 1 at n = 0.
print([str(telescope_constant(pair, n)) for n in range(8)])
