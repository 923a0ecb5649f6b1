"""
How fast must the precision grow?
=================================

Let the number of bins grow as N**alpha. The binomial width shrinks like
N**-1/2, so alpha = 1/2 is the dividing line.
"""

from spin_eur import SpinCoherentState, scaling_sweep

template = SpinCoherentState(1, 0.3, 0.0)
grid = [10**2, 10**3, 10**4, 10**5, 10**6]

for alpha in (0.3, 0.4, 0.5, 0.6, 0.7):
    rows = scaling_sweep(alpha, template, grid)
    print(f"alpha={alpha}: " + "  ".join(f"{s:.3f}" for _, _, s in rows))
