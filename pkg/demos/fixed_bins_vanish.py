"""
Fixed measurement precision: the uncertainty disappears
=======================================================

With a fixed number of magnetization bins, the binomial concentrates inside
a single bin as N grows and both entropies go to zero.
"""

import numpy as np

from spin_eur import BinningScheme, SpinCoherentState, binned_entropy, binned_entropy_sum, concentration_bin

scheme = BinningScheme(51)

for n in np.unique(np.round(np.logspace(1, 6, 16)).astype(int)):
    s = SpinCoherentState(int(n), 0.3, 0.0)
    print(f"N={n:>8}  H_x={binned_entropy(s, scheme, 'x'):.5f}"
          f"  H_z={binned_entropy(s, scheme, 'z'):.5f}"
          f"  sum={binned_entropy_sum(s, scheme):.3e}")

# Where the mass ends up.
s = SpinCoherentState(10**6, 0.3, 0.0)
print("concentration bins (x, z):", concentration_bin(s.q, scheme), concentration_bin(s.p, scheme))

# The exception: a mean sitting exactly on a bin edge splits the mass in half forever.
s = SpinCoherentState(10**6, 0.5, np.pi / 2)
print("edge case, 2 bins, H_z =", binned_entropy(s, BinningScheme(2), "z"))
