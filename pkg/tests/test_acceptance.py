"""End-to-end acceptance criteria; one summary line per criterion is printed at the end.

Run alone with ``pytest tests/test_acceptance.py``.
"""

import math

import numpy as np
import pytest

from spin_eur import oracle
from spin_eur.cli import DEFAULT_N_RANGE, SweepConfig, parse_n_spec, run_sweep_bins, run_sweep_n
from spin_eur.coarse import BinningScheme, binned_entropy, scaling_sweep
from spin_eur.collective import (
    collective_entropy,
    collective_entropy_asymptotic,
    collective_moments,
    collective_pmf,
    degenerate_sum_asymptotic,
)
from spin_eur.states import SpinCoherentState, eur_sum_product, robertson_bound_check

from conftest import SEED

GRID_P = (0.0, 0.2, 0.5, 0.7, 1.0)
GRID_PHI = (0.0, math.pi / 3, math.pi / 2, math.pi, 5 * math.pi / 4)


def test_01_product_bound_saturation(criterion):
    with criterion("1 product-basis bound saturation") as c:
        worst = 0.0
        for p in (0.0, 0.5, 1.0):
            for n in range(1, 1001):
                worst = max(worst, abs(eur_sum_product(SpinCoherentState(n, p, 0.0)) - n))
        c.detail = f"max |sum - N| = {worst:.2e} (tol 1e-9)"
        assert worst <= 1e-9


def test_02_oracle_equivalence(criterion):
    with criterion("2 oracle equivalence N<=12") as c:
        worst = 0.0
        for n in range(1, 13):
            ops = {d: oracle.magnetization_operator(n, d, dense=False) for d in "xz"}
            for p in GRID_P:
                for phi in GRID_PHI:
                    s = SpinCoherentState(n, p, phi)
                    psi = oracle.build_product_state(s)
                    for d in "xz":
                        ref = oracle.weight_distribution(psi, d).probs
                        mom = collective_moments(s, d)
                        worst = max(
                            worst,
                            np.max(np.abs(collective_pmf(s, d).probs - ref)),
                            abs(oracle.expectation(psi, ops[d]).real - mom.mean),
                            abs(oracle.variance(psi, ops[d]) - mom.variance),
                            abs(oracle.probs_entropy(ref) - collective_entropy(s, d)),
                        )
        c.detail = f"worst deviation {worst:.2e} (tol 1e-10)"
        assert worst <= 1e-10


def test_03_asymptotic_entropy(criterion):
    with criterion("3 single-direction asymptotic entropy") as c:
        gaps = []
        for n in (10**2, 10**3, 10**4, 10**5):
            exact = collective_entropy(SpinCoherentState(n, 0.3), "z")
            gaps.append(abs(exact - collective_entropy_asymptotic(n, 0.3)))
        c.detail = "gaps " + ", ".join(f"{g:.2e}" for g in gaps)
        assert gaps[2] <= 0.01
        assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_04_degenerate_growth(criterion):
    with criterion("4 degenerate sum grows as log N") as c:
        sums = {}
        for e in range(2, 7):
            s = SpinCoherentState(10**e, 0.3, math.pi / 2)
            sums[e] = collective_entropy(s, "x") + collective_entropy(s, "z")
        s4 = SpinCoherentState(10**4, 0.3, math.pi / 2)
        err = abs(sums[4] - degenerate_sum_asymptotic(10**4, 0.3, s4.q))
        steps = [sums[e + 1] - sums[e] for e in range(2, 6)]
        c.detail = f"|exact - asym| at 1e4 = {err:.2e}; per-decade steps " + \
            ", ".join(f"{d:.4f}" for d in steps)
        assert err <= 0.02
        assert all(abs(d - math.log2(10)) <= 0.05 for d in steps)


@pytest.mark.slow
def test_05_fixed_bins_vanishing(criterion):
    with criterion("5 fixed bins: rise, peak, decay to zero") as c:
        ns = parse_n_spec([DEFAULT_N_RANGE])
        rows = run_sweep_n(SweepConfig(0.3, 0.0, ns, (51,)))
        sums = [r.sum_bits for r in rows]
        peak = int(np.argmax(sums))
        c.detail = f"peak {sums[peak]:.3f} bits at N={ns[peak]}; sum at N=1e6 {sums[-1]:.2e}"
        below = [i for i, n in enumerate(ns) if n < 51]
        assert all(sums[i + 1] > sums[i] for i in below)
        assert all(b <= a for a, b in zip(sums[peak:], sums[peak + 1:]))
        assert ns[-1] == 10**6 and sums[-1] < 1e-3


def test_06a_bins_sweep_monotone(criterion):
    with criterion("6a entropy sum nondecreasing in N_b at N=100") as c:
        rows = run_sweep_bins(SweepConfig(0.3, 0.0, (100,), tuple(range(1, 257))))
        sums = [r.sum_bits for r in rows]
        drops = [(rows[i].n_bins, rows[i + 1].n_bins, sums[i] - sums[i + 1])
                 for i in range(len(sums) - 1) if sums[i + 1] < sums[i] - 1e-12]
        c.detail = f"{len(drops)} decreases over N_b=1..256" + (
            f", e.g. N_b {drops[0][0]}->{drops[0][1]} drops {drops[0][2]:.3f} bits" if drops else "")
        assert not drops


def test_06b_bins_sweep_constant(criterion):
    with criterion("6b entropy sum constant for N_b > N") as c:
        rows = run_sweep_bins(SweepConfig(0.3, 0.0, (100,), tuple(range(101, 257))))
        s = SpinCoherentState(100, 0.3, 0.0)
        unbinned = collective_entropy(s, "x") + collective_entropy(s, "z")
        dev = max(abs(r.sum_bits - unbinned) for r in rows)
        c.detail = f"max deviation from unbinned sum {dev:.2e} (tol 1e-9)"
        assert dev <= 1e-9


@pytest.mark.slow
def test_07_sqrt_growth_rule(criterion):
    with criterion("7 bins growing as N^alpha") as c:
        template = SpinCoherentState(1, 0.3, 0.0)
        slow = scaling_sweep(0.4, template, [10**6])[-1]
        fast = scaling_sweep(0.6, template, [10**6])[-1]
        c.detail = f"alpha=0.4: {slow[2]:.4f} bits (N_b={slow[1]}); alpha=0.6: {fast[2]:.3f} bits (N_b={fast[1]})"
        assert slow[2] < 0.05
        assert fast[2] > 0.5


def test_08_bin_edge_pathology(criterion):
    with criterion("8 mean on a bin edge keeps 1 bit") as c:
        h = binned_entropy(SpinCoherentState(10**6, 0.5, math.pi / 2), BinningScheme(2), "z")
        c.detail = f"z entropy at N=1e6: {h:.6f} bits"
        assert abs(h - 1.0) <= 0.01


def test_09_robertson(criterion):
    with criterion("9 Robertson relation") as c:
        ps = np.linspace(0.0, 1.0, 100)
        phis = np.linspace(0.0, 2 * math.pi, 100, endpoint=False)
        gap = min(
            lhs - rhs for lhs, rhs in (
                robertson_bound_check(SpinCoherentState(10, p, phi)) for p in ps for phi in phis))
        eq_dev = 0.0
        oracle_dev = 0.0
        for n in range(1, 11):
            s = SpinCoherentState(n, 0.5, math.pi / 2)
            lhs, rhs = robertson_bound_check(s)
            eq_dev = max(eq_dev, abs(lhs - 1 / (4 * n)), abs(rhs - 1 / (4 * n)))
            psi = oracle.build_product_state(s)
            x = oracle.magnetization_operator(n, "x", dense=False)
            z = oracle.magnetization_operator(n, "z", dense=False)
            o_lhs = math.sqrt(oracle.variance(psi, x) * oracle.variance(psi, z))
            o_rhs = 0.5 * abs(oracle.expectation(psi, x @ z - z @ x))
            oracle_dev = max(oracle_dev, abs(o_lhs - lhs), abs(o_rhs - rhs))
        c.detail = f"min lhs-rhs {gap:.2e}; equality dev {eq_dev:.1e}; oracle dev {oracle_dev:.1e}"
        assert gap >= -1e-12
        assert eq_dev <= 1e-12
        assert oracle_dev <= 1e-12


def test_10a_commutator_vanishes(criterion):
    with criterion("10a commutator norm ~ 1/N") as c:
        base = oracle.commutator_norm(1)
        dev = max(abs(oracle.commutator_norm(n) - base / n) for n in range(1, 11))
        c.detail = f"norm(1)={base:.15g}; max |norm(N) - norm(1)/N| {dev:.1e}"
        assert dev <= 1e-12


def test_10b_no_common_eigenvector(criterion):
    with criterion("10b X_N, Z_N share no eigenvector, N=1..8") as c:
        shared = [n for n in range(1, 9) if oracle.common_eigenvector_check(
            oracle.magnetization_operator(n, "x"), oracle.magnetization_operator(n, "z"))]
        c.detail = f"common eigenvector found for N={shared}" if shared else "none found"
        assert not shared


def test_11_entropic_relation_random_states(criterion):
    with criterion("11 entropic relation on random states") as c:
        rng = np.random.default_rng(SEED)
        worst = math.inf
        for i in range(100):
            n = 1 + i % 8
            psi = oracle.random_state(n, rng)
            total = sum(oracle.probs_entropy(oracle.product_basis_probs(psi, d)) for d in "xz")
            worst = min(worst, total - n)
        c.detail = f"min (H_x + H_z - N) = {worst:.4f}"
        assert worst >= -1e-9


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
