"""
Entropy sum against bin count at fixed N
========================================

"""

from spin_eur import BinningScheme, SpinCoherentState, binned_entropy_sum, collective_entropy

s = SpinCoherentState(100, 0.3, 0.0)
unbinned = collective_entropy(s, "x") + collective_entropy(s, "z")

for nb in (1, 2, 3, 4, 5, 8, 16, 32, 64, 100, 101, 128, 256):
    print(f"N_b={nb:>3}  sum={binned_entropy_sum(s, BinningScheme(nb)):.6f}")
print("unbinned sum:", unbinned)

# Refining 4 -> 5 bins is not a refinement of the partition; entropy can drop.
# Doubling the bin count always nests, and the sum never decreases along 1, 2, 4, ...
# Once N_b > N every outcome has its own bin and the sum is the unbinned value.
