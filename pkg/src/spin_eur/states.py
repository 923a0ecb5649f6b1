"""Spin-coherent preparations and their product-basis statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

from .numerics import DomainError, _clamp_prob, binary_entropy

Direction = Literal["x", "z"]


def _check_direction(direction: str) -> str:
    if direction not in ("x", "z"):
        raise ValueError(f"direction must be 'x' or 'z', got {direction!r}")
    return direction


@dataclass(frozen=True)
class SpinCoherentState:
    """``(sqrt(p)|0> + e^{i phi} sqrt(1-p)|1>)`` repeated on ``n_spins`` spins.

    ``phi`` is reduced modulo 2 pi on construction.
    """

    n_spins: int
    p: float
    phi: float = 0.0

    def __post_init__(self):
        if int(self.n_spins) != self.n_spins or self.n_spins < 1:
            raise DomainError(f"n_spins must be a positive integer, got {self.n_spins!r}")
        object.__setattr__(self, "n_spins", int(self.n_spins))
        object.__setattr__(self, "p", _clamp_prob(self.p))
        object.__setattr__(self, "phi", math.fmod(float(self.phi), 2 * math.pi) % (2 * math.pi))

    @property
    def q(self) -> float:
        return x_projection_prob(self)

    def weight(self, direction: Direction) -> float:
        """Probability that one spin is found in the +1/2 eigenstate along ``direction``."""
        return self.p if _check_direction(direction) == "z" else self.q

    def with_n(self, n_spins: int) -> "SpinCoherentState":
        return SpinCoherentState(n_spins, self.p, self.phi)


class MomentSummary(NamedTuple):
    mean: float
    variance: float


def x_projection_prob(state: SpinCoherentState) -> float:
    """Single-spin probability of projecting onto ``|+>``."""
    q = 0.5 + math.sqrt(state.p * (1.0 - state.p)) * math.cos(state.phi)
    return min(1.0, max(0.0, q))


def product_basis_entropy(state: SpinCoherentState, direction: Direction) -> float:
    """Entropy in bits of measuring every spin individually along ``direction``."""
    return state.n_spins * binary_entropy(state.weight(direction))


def eur_product_bound(n_spins: int) -> float:
    """Maassen-Uffink bound for the x/z product bases: ``-2 log2 2**(-N/2) = N``."""
    if n_spins < 1:
        raise DomainError("n_spins must be >= 1")
    return float(n_spins)


def eur_sum_product(state: SpinCoherentState) -> float:
    return state.n_spins * (binary_entropy(state.p) + binary_entropy(state.q))


def magnetization_expectations(state: SpinCoherentState) -> tuple[float, float, float]:
    """``(<X_N>, <Y_N>, <Z_N>)``; intensive, so independent of N."""
    s = math.sqrt(state.p * (1.0 - state.p))
    return (state.q - 0.5, s * math.sin(state.phi), state.p - 0.5)


def robertson_bound_check(state: SpinCoherentState) -> tuple[float, float]:
    """Return ``(Delta X_N * Delta Z_N, |<[X_N, Z_N]>| / 2)``.

    With ``[X_N, Z_N] = -i Y_N / N`` the right side is ``|<Y_N>| / (2N)``.
    """
    n = state.n_spins
    p, q = state.p, state.q
    lhs = math.sqrt(max(0.0, q * (1.0 - q) * p * (1.0 - p))) / n
    rhs = math.sqrt(p * (1.0 - p)) * abs(math.sin(state.phi)) / (2.0 * n)
    return lhs, rhs
