"""Dense statevector brute force for small spin counts.

Basis index ``s`` encodes spin ``i`` in bit ``i`` (``(s >> i) & 1``), with bit
0 meaning ``|0>``, the +1 eigenstate of sigma_z. Everything here is
exponential in N and exists to check the closed forms elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .numerics import LN2, DomainError, Pmf, _entropy_nats
from .states import SpinCoherentState

DEFAULT_CAP = 14
MAX_CAP = 20
DEGENERACY_TOL = 1e-10
EIGVEC_TOL = 1e-9

_cap = DEFAULT_CAP

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)


class SizeCapError(DomainError):
    """Requested spin count exceeds the oracle size cap."""


def set_cap(n: int) -> None:
    global _cap
    if not 1 <= n <= MAX_CAP:
        raise ValueError(f"cap must lie in 1..{MAX_CAP}")
    _cap = int(n)


def get_cap() -> int:
    return _cap


def _check_cap(n: int) -> None:
    if n > _cap:
        raise SizeCapError(f"{n} spins exceeds the oracle cap of {_cap}")
    if n < 1:
        raise DomainError("need at least one spin")


@dataclass(frozen=True)
class DenseState:
    n_spins: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_cap(self.n_spins)
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (2**self.n_spins,):
            raise ValueError("amplitude vector has the wrong length")
        norm = np.vdot(amp, amp).real
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm {norm!r} is not 1")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)


def random_state(n_spins: int, rng: np.random.Generator) -> DenseState:
    v = rng.standard_normal(2**n_spins) + 1j * rng.standard_normal(2**n_spins)
    return DenseState(n_spins, v / np.linalg.norm(v))


def _popcount(n_spins: int) -> np.ndarray:
    s = np.arange(2**n_spins)
    return sum((s >> i) & 1 for i in range(n_spins))


def build_product_state(state: SpinCoherentState) -> DenseState:
    n = state.n_spins
    _check_cap(n)
    ones = _popcount(n)
    a0 = math.sqrt(state.p)
    a1 = np.exp(1j * state.phi) * math.sqrt(1.0 - state.p)
    amp = a0 ** (n - ones) * a1**ones
    amp = amp / np.linalg.norm(amp)
    return DenseState(n, amp)


def _single_spin_term(n: int, i: int, mat: np.ndarray) -> sp.csr_matrix:
    # spin i is bit i, i.e. kron factor n-1-i counting from the left
    left = sp.identity(2 ** (n - 1 - i), format="csr", dtype=complex)
    right = sp.identity(2**i, format="csr", dtype=complex)
    return sp.kron(sp.kron(left, sp.csr_matrix(mat)), right, format="csr")


def magnetization_operator(n_spins: int, direction: str, dense: bool = True):
    """``(1/N) sum_i sigma_k^(i) / 2``; dense array, or sparse CSR with ``dense=False``."""
    _check_cap(n_spins)
    if direction not in _PAULI:
        raise ValueError(f"direction must be x, y or z, got {direction!r}")
    op = sp.csr_matrix((2**n_spins, 2**n_spins), dtype=complex)
    for i in range(n_spins):
        op = op + _single_spin_term(n_spins, i, _PAULI[direction])
    op = op / (2.0 * n_spins)
    return op.toarray() if dense else op.tocsr()


def _rotate_to_x(psi: DenseState) -> np.ndarray:
    """Amplitudes in the x product basis (bit 0 -> |+>), applied factor by factor."""
    n = psi.n_spins
    t = psi.amplitudes.reshape([2] * n)
    for axis in range(n):
        t = np.moveaxis(np.tensordot(_HADAMARD, t, axes=([1], [axis])), 0, axis)
    return t.reshape(-1)


def product_basis_probs(psi: DenseState, direction: str) -> np.ndarray:
    """Outcome probabilities of measuring every spin along x or z (2**N outcomes)."""
    if direction == "z":
        amp = psi.amplitudes
    elif direction == "x":
        amp = _rotate_to_x(psi)
    else:
        raise ValueError(f"direction must be 'x' or 'z', got {direction!r}")
    return np.abs(amp) ** 2


def probs_entropy(probs: np.ndarray) -> float:
    """Entropy in bits of a raw probability vector (used on oracle outputs)."""
    probs = np.asarray(probs, dtype=float)
    with np.errstate(divide="ignore"):
        lp = np.log(probs[probs > 0])
    return max(0.0, _entropy_nats(lp) / LN2)


def weight_distribution(psi: DenseState, direction: str) -> Pmf:
    """Distribution of ``k``, the number of spins in the +1 eigenstate along ``direction``.

    ``k = N - popcount(s)``; total spin ``j = k - N/2``.
    """
    n = psi.n_spins
    probs = product_basis_probs(psi, direction)
    k = n - _popcount(n)
    mass = np.bincount(k, weights=probs, minlength=n + 1)
    return Pmf.from_probs(mass / mass.sum(), np.arange(n + 1))


def expectation(psi: DenseState, op) -> complex:
    return complex(np.vdot(psi.amplitudes, op @ psi.amplitudes))


def variance(psi: DenseState, op) -> float:
    v = op @ psi.amplitudes
    mean = np.vdot(psi.amplitudes, v).real
    return float(max(0.0, np.vdot(v, v).real - mean**2))


def commutator_norm(n_spins: int) -> float:
    """Spectral norm of ``[X_N, Z_N]``."""
    x = magnetization_operator(n_spins, "x")
    z = magnetization_operator(n_spins, "z")
    c = x @ z - z @ x
    # i[X, Z] is Hermitian, so its norm is the largest |eigenvalue|
    return float(np.max(np.abs(np.linalg.eigvalsh(1j * c))))


def _eigenspaces(a: np.ndarray) -> list[np.ndarray]:
    vals, vecs = np.linalg.eigh(a)
    groups, start = [], 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > DEGENERACY_TOL:
            groups.append(vecs[:, start:i])
            start = i
    return groups


def _check_hermitian(a: np.ndarray, name: str) -> np.ndarray:
    a = np.asarray(a.toarray() if sp.issparse(a) else a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} is not square")
    if not np.allclose(a, a.conj().T, atol=1e-12, rtol=0):
        raise ValueError(f"{name} is not Hermitian")
    return a


def common_eigenvector_check(a, b) -> bool:
    """True iff some unit vector is an eigenvector of both ``a`` and ``b``.

    A common eigenvector exists iff an eigenspace of ``a`` and an eigenspace
    of ``b`` intersect. For each pair the vector of ``a``'s eigenspace closest
    to ``b``'s eigenspace (the top principal vector) is tested directly.
    """
    a = _check_hermitian(a, "a")
    b = _check_hermitian(b, "b")
    if a.shape != b.shape:
        raise ValueError("operators differ in dimension")
    dim = a.shape[0]
    if dim > 2**_cap:
        raise SizeCapError(f"dimension {dim} exceeds the oracle cap")
    spaces_b = _eigenspaces(b)
    for va in _eigenspaces(a):
        for vb in spaces_b:
            u, s, _ = np.linalg.svd(va.conj().T @ vb)
            if s[0] < 0.5:
                continue
            v = va @ u[:, 0]
            v /= np.linalg.norm(v)
            bv = b @ v
            lam = np.vdot(v, bv)
            av = a @ v
            mu = np.vdot(v, av)
            if (np.linalg.norm(bv - lam * v) <= EIGVEC_TOL
                    and np.linalg.norm(av - mu * v) <= EIGVEC_TOL):
                return True
    return False


def product_basis(n_spins: int, direction: str) -> np.ndarray:
    """Columns are the product eigenbasis along z (standard) or x (Hadamard power)."""
    _check_cap(n_spins)
    if direction == "z":
        return np.eye(2**n_spins, dtype=complex)
    if direction == "x":
        h = np.ones((1, 1), dtype=complex)
        for _ in range(n_spins):
            h = np.kron(h, _HADAMARD)
        return h
    raise ValueError(f"direction must be 'x' or 'z', got {direction!r}")


def _as_columns(basis) -> np.ndarray:
    if isinstance(basis, np.ndarray):
        return np.asarray(basis, dtype=complex)
    return np.column_stack([s.amplitudes if isinstance(s, DenseState) else np.asarray(s)
                            for s in basis])


def eur_bound_general(basis_a: Sequence[DenseState] | np.ndarray,
                      basis_b: Sequence[DenseState] | np.ndarray) -> float:
    """``-2 log2 max |<a_j|b_k>|`` for two orthonormal bases (lists or column matrices)."""
    ma, mb = _as_columns(basis_a), _as_columns(basis_b)
    if ma.shape != mb.shape or ma.shape[0] != ma.shape[1]:
        raise ValueError("bases must be square and of equal dimension")
    eye = np.eye(ma.shape[0])
    for name, m in (("basis_a", ma), ("basis_b", mb)):
        if not np.allclose(m.conj().T @ m, eye, atol=1e-10, rtol=0):
            raise ValueError(f"{name} is not orthonormal")
    overlap = np.max(np.abs(ma.conj().T @ mb))
    return max(0.0, -2.0 * math.log2(min(1.0, overlap)))
