"""
Closed forms against brute force
================================

Builds the full 2**N statevector for small N and compares.
"""

from spin_eur import oracle
from spin_eur.cli import oracle_check

for check in oracle_check(max_n=8):
    print(f"{check.name:<20} worst deviation {check.worst:.2e}")

# The magnetization operators commute in the large-N limit.
for n in (1, 2, 4, 8):
    print(f"N={n}: ||[X_N, Z_N]|| = {oracle.commutator_norm(n):.6f}")

# ...but for even N they already share eigenvectors: the total-spin-zero states.
for n in (1, 2, 3, 4):
    x = oracle.magnetization_operator(n, "x")
    z = oracle.magnetization_operator(n, "z")
    print(f"N={n}: common eigenvector? {oracle.common_eigenvector_check(x, z)}")

# Product bases along x and z are mutually unbiased: overlap 2**(-N/2) gives a bound of N bits.
bound = oracle.eur_bound_general(oracle.product_basis(3, "x"), oracle.product_basis(3, "z"))
print("bound for N=3:", round(bound, 12))
