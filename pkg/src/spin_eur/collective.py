"""Degenerate total-magnetization measurements on spin-coherent states.

Outcomes are indexed internally by ``k = N/2 + j`` in ``0..N``, the number of
spins found in the +1/2 eigenstate, so the distribution is exactly
``Binomial(N, w)`` with ``w = p`` along z and ``w = q`` along x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import (
    LN2,
    DomainError,
    Pmf,
    _clamp_prob,
    log_binomial_pmf_all,
    shannon_entropy,
)
from .states import Direction, MomentSummary, SpinCoherentState, _check_direction

# Outcomes below this log-probability contribute < 1e-300 bits.
ENTROPY_LOG_CUTOFF = -1100.0


@dataclass(frozen=True)
class CollectivePMF:
    n_spins: int
    direction: str
    basis_weight: float
    log_probs: np.ndarray

    @property
    def k(self) -> np.ndarray:
        return np.arange(self.n_spins + 1)

    @property
    def j_values(self) -> np.ndarray:
        """Total-spin eigenvalues ``j = k - N/2`` (half-integers for odd N)."""
        return self.k - self.n_spins / 2

    @property
    def magnetizations(self) -> np.ndarray:
        return self.k / self.n_spins - 0.5

    @property
    def probs(self) -> np.ndarray:
        return np.exp(self.log_probs)

    def as_pmf(self) -> Pmf:
        return Pmf(self.log_probs, self.k)


def collective_pmf(state: SpinCoherentState, direction: Direction) -> CollectivePMF:
    w = state.weight(_check_direction(direction))
    return CollectivePMF(state.n_spins, direction, w, log_binomial_pmf_all(state.n_spins, w))


def collective_moments(state: SpinCoherentState, direction: Direction) -> MomentSummary:
    w = state.weight(_check_direction(direction))
    return MomentSummary(w - 0.5, w * (1.0 - w) / state.n_spins)


def pmf_moments(dist: CollectivePMF) -> MomentSummary:
    """Mean and variance of the magnetization by direct summation over outcomes."""
    probs = dist.probs
    m = dist.magnetizations
    mean = math.fsum(probs * m)
    var = math.fsum(probs * (m - mean) ** 2)
    return MomentSummary(mean, var)


def collective_entropy(state: SpinCoherentState, direction: Direction) -> float:
    """Exact entropy (bits) of the N+1-outcome magnetization distribution."""
    dist = collective_pmf(state, direction)
    return shannon_entropy(dist.as_pmf(), cutoff=ENTROPY_LOG_CUTOFF)


def collective_entropy_asymptotic(n_spins: int, weight: float) -> float:
    """Gaussian differential-entropy limit ``1/2 log2(2 pi e N w (1-w))``."""
    if n_spins < 1:
        raise DomainError("n_spins must be >= 1")
    w = _clamp_prob(weight, "weight")
    if w in (0.0, 1.0):
        raise DomainError("asymptotic entropy undefined for a deterministic outcome")
    return 0.5 * math.log(2 * math.pi * math.e * n_spins * w * (1.0 - w)) / LN2


def degenerate_sum_asymptotic(n_spins: int, p: float, q: float) -> float:
    """``log2 N + 1/2 log2(4 pi^2 e^2 p q (1-p)(1-q))``."""
    if n_spins < 1:
        raise DomainError("n_spins must be >= 1")
    p = _clamp_prob(p)
    q = _clamp_prob(q, "q")
    if p in (0.0, 1.0) or q in (0.0, 1.0):
        raise DomainError("asymptotic entropy undefined for a deterministic outcome")
    inner = 4 * math.pi**2 * math.e**2 * p * q * (1 - p) * (1 - q)
    return math.log2(n_spins) + 0.5 * math.log(inner) / LN2
