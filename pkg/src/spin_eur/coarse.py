"""Fixed-precision (binned) magnetization measurements.

The range ``[-1/2, 1/2]`` is cut into ``n_bins`` equal half-open intervals
``[-1/2 + (n-1)/N_b, -1/2 + n/N_b)`` for ``n = 1..N_b``, the last one closed
so that magnetization ``+1/2`` has a home. Outcome ``k`` of an N-spin
measurement has magnetization ``k/N - 1/2`` and so lands in bin
``min(N_b, floor(k N_b / N) + 1)``; this is evaluated in integers, so
outcomes sitting exactly on an edge are assigned without rounding error.
Float inputs (a mean magnetization, a weight) are snapped onto an edge when
within ``EDGE_SLACK`` of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

import numpy as np

from .collective import ENTROPY_LOG_CUTOFF, collective_pmf
from .numerics import (
    PROB_SLACK,
    DomainError,
    Pmf,
    _clamp_prob,
    gaussian_interval_mass,
    log_sum_exp,
    shannon_entropy,
)
from .states import Direction, SpinCoherentState, _check_direction

Method = Literal["exact", "gaussian"]

# Float magnetizations this close to a bin edge are treated as lying on it.
EDGE_SLACK = 1e-12


class DegenerateVarianceError(DomainError):
    """The Gaussian approximation needs a non-deterministic outcome."""


@dataclass(frozen=True)
class BinningScheme:
    n_bins: int

    def __post_init__(self):
        if int(self.n_bins) != self.n_bins or self.n_bins < 1:
            raise DomainError(f"n_bins must be a positive integer, got {self.n_bins!r}")
        object.__setattr__(self, "n_bins", int(self.n_bins))

    def edge(self, n: int) -> Fraction:
        """Upper edge of bin ``n`` (lower edge of bin ``n+1``) as an exact rational."""
        return Fraction(-1, 2) + Fraction(n, self.n_bins)

    def float_edges(self) -> np.ndarray:
        return -0.5 + np.arange(self.n_bins + 1) / self.n_bins

    def bins_of_outcomes(self, n_spins: int) -> np.ndarray:
        """Bin number (1-based) of every outcome ``k = 0..N``."""
        k = np.arange(n_spins + 1, dtype=np.int64)
        return np.minimum(self.n_bins, (k * self.n_bins) // n_spins + 1)


@dataclass(frozen=True)
class BinnedPMF:
    scheme: BinningScheme
    direction: str
    log_probs: np.ndarray
    method: str

    @property
    def probs(self) -> np.ndarray:
        return np.exp(self.log_probs)

    @property
    def bins(self) -> np.ndarray:
        return np.arange(1, self.scheme.n_bins + 1)

    def as_pmf(self) -> Pmf:
        return Pmf(self.log_probs, self.bins)


def _edge_floor(offset: Fraction, n_bins: int) -> int:
    """``floor(offset * n_bins)`` where an offset within ``EDGE_SLACK`` of an edge counts as on it.

    Decimal inputs such as 0.3 are not exactly representable; without the
    snap, ``0.3 * 10`` would land just below the edge at 3.
    """
    t = offset * n_bins
    nearest = round(t)
    if abs(t - nearest) <= EDGE_SLACK * n_bins:
        return int(nearest)
    return math.floor(t)


def bin_index(magnetization: float, scheme: BinningScheme) -> int:
    if not (-0.5 - PROB_SLACK <= magnetization <= 0.5 + PROB_SLACK):
        raise DomainError(f"magnetization {magnetization!r} outside [-1/2, 1/2]")
    m = min(0.5, max(-0.5, magnetization))
    return min(scheme.n_bins, _edge_floor(Fraction(m) + Fraction(1, 2), scheme.n_bins) + 1)


def concentration_bin(weight: float, scheme: BinningScheme) -> int:
    """Bin holding the mean magnetization ``w - 1/2``: ``floor(N_b w) + 1``, or ``N_b`` at ``w = 1``."""
    w = _clamp_prob(weight, "weight")
    if w == 1.0:
        return scheme.n_bins
    return min(scheme.n_bins, _edge_floor(Fraction(w), scheme.n_bins) + 1)


def _merge_log_probs(log_probs: np.ndarray, bins: np.ndarray, n_bins: int) -> np.ndarray:
    out = np.full(n_bins, -np.inf)
    # bins is nondecreasing in k, so each bin owns one contiguous run
    starts = np.flatnonzero(np.r_[True, bins[1:] != bins[:-1]])
    stops = np.r_[starts[1:], bins.size]
    if np.all(stops - starts == 1):
        out[bins - 1] = log_probs
        return out
    for a, b in zip(starts, stops):
        seg = log_probs[a:b]
        top = seg.max()
        if top == -np.inf:
            continue
        out[bins[a] - 1] = top + math.log(math.fsum(np.exp(seg - top)))
    # absorb summation roundoff so a lone occupied bin carries exactly log 1
    return np.minimum(out - log_sum_exp(out), 0.0)


def binned_pmf_exact(state: SpinCoherentState, scheme: BinningScheme,
                     direction: Direction) -> BinnedPMF:
    """Sum the binomial outcome probabilities falling into each bin."""
    dist = collective_pmf(state, direction)
    bins = scheme.bins_of_outcomes(state.n_spins)
    return BinnedPMF(scheme, direction, _merge_log_probs(dist.log_probs, bins, scheme.n_bins), "exact")


def binned_pmf_gaussian(state: SpinCoherentState, scheme: BinningScheme,
                        direction: Direction) -> BinnedPMF:
    """Normal approximation to the binned distribution.

    Each bin gets the normal mass of its interval, then the masses are
    renormalized over ``[-1/2, 1/2]`` since the normal leaks outside it.
    """
    w = state.weight(_check_direction(direction))
    if w in (0.0, 1.0):
        raise DegenerateVarianceError(f"weight {w} gives zero variance along {direction}")
    mean = w - 0.5
    var = w * (1.0 - w) / state.n_spins
    edges = scheme.float_edges()
    masses = np.array([gaussian_interval_mass(mean, var, lo, hi)
                       for lo, hi in zip(edges[:-1], edges[1:])])
    total = math.fsum(masses)
    with np.errstate(divide="ignore"):
        lp = np.log(masses) - math.log(total)
    return BinnedPMF(scheme, direction, np.minimum(lp, 0.0), "gaussian")


def binned_pmf(state: SpinCoherentState, scheme: BinningScheme, direction: Direction,
               method: Method = "exact") -> BinnedPMF:
    if method == "exact":
        return binned_pmf_exact(state, scheme, direction)
    if method == "gaussian":
        return binned_pmf_gaussian(state, scheme, direction)
    raise ValueError(f"unknown method {method!r}")


def binned_entropy(state: SpinCoherentState, scheme: BinningScheme, direction: Direction,
                   method: Method = "exact") -> float:
    dist = binned_pmf(state, scheme, direction, method)
    return shannon_entropy(dist.as_pmf(), cutoff=ENTROPY_LOG_CUTOFF)


def binned_entropy_sum(state: SpinCoherentState, scheme: BinningScheme,
                       method: Method = "exact") -> float:
    return (binned_entropy(state, scheme, "x", method)
            + binned_entropy(state, scheme, "z", method))


def scaled_bins(n_spins: int, alpha: float, base_bins: int = 1) -> int:
    return max(1, round(base_bins * n_spins**alpha))


def scaling_sweep(alpha: float, template: SpinCoherentState, n_grid: Iterable[int],
                  base_bins: int = 1, method: Method = "exact") -> list[tuple[int, int, float]]:
    """Entropy sum along ``n_grid`` with ``N_b = max(1, round(base_bins * N**alpha))``.

    Only ``p`` and ``phi`` are taken from ``template``.
    """
    if alpha < 0:
        raise DomainError("alpha must be >= 0")
    n_grid = [int(n) for n in n_grid]
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ValueError("n_grid must be strictly ascending")
    rows = []
    for n in n_grid:
        nb = scaled_bins(n, alpha, base_bins)
        rows.append((n, nb, binned_entropy_sum(template.with_n(n), BinningScheme(nb), method)))
    return rows
