import math

import numpy as np
import pytest

from spin_eur import oracle
from spin_eur.collective import collective_pmf
from spin_eur.states import SpinCoherentState

from conftest import SEED


class TestProductState:
    def test_examples(self):
        psi = oracle.build_product_state(SpinCoherentState(1, 1.0, 0.3))
        np.testing.assert_allclose(psi.amplitudes, [1, 0], atol=1e-15)
        psi = oracle.build_product_state(SpinCoherentState(2, 0.5, 0.0))
        np.testing.assert_allclose(psi.amplitudes, [0.5] * 4, atol=1e-15)
        psi = oracle.build_product_state(SpinCoherentState(3, 0.25, math.pi / 3))
        assert abs(np.linalg.norm(psi.amplitudes) - 1) <= 1e-14

    def test_matches_kronecker_product(self):
        s = SpinCoherentState(4, 0.3, 1.1)
        single = np.array([math.sqrt(0.3), np.exp(1.1j) * math.sqrt(0.7)])
        ref = single
        for _ in range(3):
            ref = np.kron(ref, single)
        np.testing.assert_allclose(oracle.build_product_state(s).amplitudes, ref, atol=1e-15)

    def test_cap(self):
        with pytest.raises(oracle.SizeCapError):
            oracle.build_product_state(SpinCoherentState(15, 0.5))
        with pytest.raises(oracle.SizeCapError):
            oracle.magnetization_operator(30, "z")

    def test_cap_configurable(self):
        try:
            oracle.set_cap(16)
            assert oracle.build_product_state(SpinCoherentState(15, 0.5)).n_spins == 15
        finally:
            oracle.set_cap(oracle.DEFAULT_CAP)
        with pytest.raises(ValueError):
            oracle.set_cap(25)


class TestOperators:
    def test_single_spin(self):
        np.testing.assert_allclose(oracle.magnetization_operator(1, "z"), np.diag([0.5, -0.5]))

    def test_two_spins(self):
        np.testing.assert_allclose(oracle.magnetization_operator(2, "z"), np.diag([0.5, 0, 0, -0.5]))

    def test_spectrum_multiplicities(self):
        for d in "xyz":
            vals = np.linalg.eigvalsh(oracle.magnetization_operator(4, d))
            levels, counts = np.unique(np.round(vals, 10), return_counts=True)
            np.testing.assert_allclose(levels, [-0.5, -0.25, 0, 0.25, 0.5], atol=1e-12)
            assert counts.tolist() == [1, 4, 6, 4, 1]

    @pytest.mark.parametrize("n", [1, 3, 6])
    def test_hermitian(self, n):
        for d in "xyz":
            a = oracle.magnetization_operator(n, d)
            np.testing.assert_allclose(a, a.conj().T, atol=1e-12)

    def test_commutator_identity(self):
        # [X_N, Z_N] = -i Y_N / N
        for n in (1, 3, 5):
            x, y, z = (oracle.magnetization_operator(n, d) for d in "xyz")
            np.testing.assert_allclose(x @ z - z @ x, -1j * y / n, atol=1e-14)


class TestCommutatorNorm:
    def test_examples(self):
        assert oracle.commutator_norm(1) == pytest.approx(0.5, abs=1e-14)
        assert oracle.commutator_norm(2) == pytest.approx(0.25, abs=1e-14)

    def test_inverse_n(self):
        base = oracle.commutator_norm(1)
        for n in range(1, 11):
            assert oracle.commutator_norm(n) == pytest.approx(base / n, abs=1e-12)

    def test_y_norm_is_half(self):
        for n in (1, 4, 7):
            assert np.linalg.norm(oracle.magnetization_operator(n, "y"), 2) == pytest.approx(0.5)


class TestCommonEigenvector:
    def test_same_basis(self):
        z = oracle.magnetization_operator(3, "z")
        assert oracle.common_eigenvector_check(z, z @ z)

    def test_commuting_diagonals(self):
        assert oracle.common_eigenvector_check(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))

    @pytest.mark.parametrize("n", [1, 3, 5, 7])
    def test_x_and_z_odd(self, n):
        x = oracle.magnetization_operator(n, "x")
        z = oracle.magnetization_operator(n, "z")
        assert not oracle.common_eigenvector_check(x, z)

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_x_and_z_even_share_singlets(self, n):
        # total-spin-zero states are annihilated by X_N, Y_N and Z_N alike
        x = oracle.magnetization_operator(n, "x")
        z = oracle.magnetization_operator(n, "z")
        assert oracle.common_eigenvector_check(x, z)

    def test_two_spin_singlet(self):
        singlet = np.array([0, 1, -1, 0]) / math.sqrt(2)
        for d in "xyz":
            np.testing.assert_allclose(oracle.magnetization_operator(2, d) @ singlet, 0, atol=1e-15)

    def test_shared_vector_hidden_in_degenerate_space(self):
        # common eigenvector e0, but b has no eigenvector aligned with a's
        # computed basis of the degenerate block {e1, e2}
        a = np.diag([0.0, 1.0, 1.0])
        b = np.array([[2, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=float)
        assert oracle.common_eigenvector_check(a, b)
        c = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=float)
        assert not oracle.common_eigenvector_check(np.diag([0.0, 1.0, 2.0]), c)

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            oracle.common_eigenvector_check(np.array([[0, 1], [0, 0]]), np.eye(2))


class TestWeightDistribution:
    def test_point_masses(self):
        psi = oracle.build_product_state(SpinCoherentState(5, 1.0))
        probs = oracle.weight_distribution(psi, "z").probs
        # k = 5 is Hamming weight 0, all spins in |0>
        assert probs[5] == pytest.approx(1.0) and probs[:5].sum() == pytest.approx(0.0)
        psi = oracle.build_product_state(SpinCoherentState(5, 0.5, 0.0))
        assert oracle.weight_distribution(psi, "x").probs[5] == pytest.approx(1.0, abs=1e-14)

    def test_matches_binomial(self):
        grid = [(p, phi) for p in (0.0, 0.2, 0.5, 0.7, 1.0)
                for phi in (0.0, 1.0, math.pi / 2, math.pi, 4.0)]
        for n in range(1, 15):
            for p, phi in grid:
                s = SpinCoherentState(n, p, phi)
                psi = oracle.build_product_state(s)
                for d in "xz":
                    np.testing.assert_allclose(oracle.weight_distribution(psi, d).probs,
                                               collective_pmf(s, d).probs, atol=1e-10, rtol=0)


class TestEurBound:
    def test_same_basis(self):
        z = oracle.product_basis(3, "z")
        assert oracle.eur_bound_general(z, z) == 0.0

    def test_product_bases(self):
        assert oracle.eur_bound_general(oracle.product_basis(3, "z"),
                                        oracle.product_basis(3, "x")) == pytest.approx(3.0, abs=1e-12)

    def test_list_of_states(self):
        n = 2
        za = [oracle.DenseState(n, col) for col in oracle.product_basis(n, "z").T]
        xa = [oracle.DenseState(n, col) for col in oracle.product_basis(n, "x").T]
        assert oracle.eur_bound_general(za, xa) == pytest.approx(2.0, abs=1e-12)

    def test_non_orthonormal(self):
        bad = np.array([[1, 1], [0, 1]], dtype=complex)
        with pytest.raises(ValueError):
            oracle.eur_bound_general(bad, np.eye(2))

    def test_random_states_obey_relation(self):
        rng = np.random.default_rng(SEED)
        for i in range(100):
            n = 1 + i % 8
            psi = oracle.random_state(n, rng)
            total = sum(oracle.probs_entropy(oracle.product_basis_probs(psi, d)) for d in "xz")
            bound = oracle.eur_bound_general(oracle.product_basis(n, "z"), oracle.product_basis(n, "x"))
            assert total >= bound - 1e-9
