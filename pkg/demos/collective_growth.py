"""
Total-magnetization entropy grows only logarithmically
======================================================

"""

import math

from spin_eur import (
    SpinCoherentState,
    collective_entropy,
    collective_entropy_asymptotic,
    degenerate_sum_asymptotic,
)

# Only the total spin along z is recorded, so there are N+1 outcomes instead of 2**N.
# The distribution is binomial and its entropy approaches the Gaussian value.
for n in (10, 100, 1000, 10**4, 10**5):
    s = SpinCoherentState(n, 0.3)
    exact = collective_entropy(s, "z")
    print(f"N={n:>6}  H_z={exact:.6f}  gaussian={collective_entropy_asymptotic(n, 0.3):.6f}")

# At phi = pi/2 the x weight is 1/2; the two entropies together gain log2(10) per decade.
print()
prev = None
for e in range(2, 7):
    s = SpinCoherentState(10**e, 0.3, math.pi / 2)
    total = collective_entropy(s, "x") + collective_entropy(s, "z")
    step = "" if prev is None else f"  step={total - prev:.4f}"
    print(f"N=1e{e}  sum={total:.4f}  asym={degenerate_sum_asymptotic(10**e, 0.3, s.q):.4f}{step}")
    prev = total
print("log2(10) =", math.log2(10))
