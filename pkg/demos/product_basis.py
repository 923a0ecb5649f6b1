"""
Product-basis uncertainty for spin-coherent states
==================================================

Measuring every spin individually along x and along z.
"""

import math

import numpy as np

from spin_eur import SpinCoherentState, eur_product_bound, eur_sum_product, product_basis_entropy
from spin_eur import oracle

# A spin-coherent state is N copies of sqrt(p)|0> + e^{i phi} sqrt(1-p)|1>.
state = SpinCoherentState(n_spins=20, p=0.3, phi=math.pi / 3)
print("x weight q =", state.q)

# Each spin contributes one binary entropy per direction, so the sum scales with N.
print("H_x =", product_basis_entropy(state, "x"))
print("H_z =", product_basis_entropy(state, "z"))
print("sum =", eur_sum_product(state), ">= bound", eur_product_bound(20))

# Eigenstates of either single-spin operator reach the bound exactly.
for p, phi in [(1.0, 0.0), (0.0, 0.0), (0.5, 0.0), (0.5, math.pi)]:
    print(f"p={p}, phi={phi:.3f}: sum - N =", eur_sum_product(SpinCoherentState(20, p, phi)) - 20)

# The bound also holds for arbitrary (entangled) states; check a few with the dense oracle.
rng = np.random.default_rng(7)
for n in (2, 4, 6):
    psi = oracle.random_state(n, rng)
    h = sum(oracle.probs_entropy(oracle.product_basis_probs(psi, d)) for d in "xz")
    print(f"random N={n}: H_x + H_z = {h:.3f}")
