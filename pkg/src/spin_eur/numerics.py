"""Numerically stable scalar kernels.

Probabilities are carried as natural logarithms; entropies are returned in
bits. Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

LN2 = math.log(2.0)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

PROB_SLACK = 1e-12
NORM_TOL = 1e-9


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NormalizationError(ValueError):
    """A distribution does not sum to one."""


def _clamp_prob(p: float, name: str = "p") -> float:
    if not (-PROB_SLACK <= p <= 1.0 + PROB_SLACK):
        raise DomainError(f"{name}={p!r} is not a probability")
    return min(1.0, max(0.0, float(p)))


def log_sum_exp(terms: Iterable[float] | np.ndarray) -> float:
    """Return ``ln(sum(exp(terms)))`` without overflow or underflow.

    The shifted exponentials are accumulated with :func:`math.fsum`, which is
    correctly rounded regardless of term order.
    """
    arr = np.asarray(list(terms) if not isinstance(terms, np.ndarray) else terms,
                     dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("log_sum_exp of an empty sequence")
    top = arr.max()
    if top == -math.inf:
        return -math.inf
    if top == math.inf:
        return math.inf
    return float(top + math.log(math.fsum(np.exp(arr - top))))


@dataclass(frozen=True)
class Pmf:
    """A finite distribution stored as natural-log probabilities."""

    log_probs: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        lp = np.asarray(self.log_probs, dtype=float)
        labels = np.asarray(self.labels)
        if lp.ndim != 1 or lp.shape != labels.shape:
            raise ValueError("log_probs and labels must be 1-d and equally long")
        if np.any(lp > 0.0):
            raise DomainError("log-probabilities must be <= 0")
        object.__setattr__(self, "log_probs", lp)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_probs(cls, probs: Sequence[float], labels: Sequence | None = None) -> "Pmf":
        probs = np.asarray(probs, dtype=float)
        if np.any(probs < 0):
            raise DomainError("negative probability")
        if labels is None:
            labels = np.arange(probs.size)
        with np.errstate(divide="ignore"):
            lp = np.log(probs)
        return cls(np.minimum(lp, 0.0), np.asarray(labels))

    @property
    def probs(self) -> np.ndarray:
        return np.exp(self.log_probs)

    def __len__(self) -> int:
        return self.log_probs.size

    def log_total(self) -> float:
        return log_sum_exp(self.log_probs)

    def check_normalized(self, tol: float = NORM_TOL) -> None:
        total = self.log_total()
        if not abs(total) <= tol:
            raise NormalizationError(f"log total mass {total:.3e} exceeds tolerance {tol:g}")


def _entropy_nats(log_probs: np.ndarray, cutoff: float = -math.inf) -> float:
    lp = log_probs[log_probs > cutoff]
    lp = lp[np.isfinite(lp)]
    if lp.size == 0:
        return 0.0
    return -math.fsum(np.exp(lp) * lp)


def shannon_entropy(dist: Pmf, *, cutoff: float = -math.inf, check: bool = True) -> float:
    """Shannon entropy of ``dist`` in bits.

    Zero-probability outcomes (log-prob ``-inf``) are skipped, which is the
    ``0 log 0 = 0`` convention. ``cutoff`` additionally drops outcomes whose
    log-probability is at or below it.
    """
    if check:
        dist.check_normalized()
    h = _entropy_nats(dist.log_probs, cutoff) / LN2
    return max(0.0, h)


def binary_entropy(p: float) -> float:
    """``-p log2 p - (1-p) log2 (1-p)``, with ``0 log 0 = 0``."""
    p = _clamp_prob(p)
    with np.errstate(divide="ignore"):
        lp = np.array([np.log(p), np.log1p(-p)])
    return max(0.0, _entropy_nats(lp) / LN2)


# ln(k!) - (k + 1/2) ln k + k - ln(2 pi)/2 for k = 1..15.
_STIRLERR_TABLE = np.array([
    0.0,
    0.081061466795327258,
    0.041340695955409294,
    0.027677925684998339,
    0.020790672103765093,
    0.016644691189821192,
    0.013876128823070748,
    0.01189670994589177,
    0.010411265261972096,
    0.0092554621827127329,
    0.0083305634333628713,
    0.0075736754879518408,
    0.0069428401072095299,
    0.0064089941880042071,
    0.0059513701127588477,
    0.0055547335519628014,
])


def _stirlerr(n: np.ndarray) -> np.ndarray:
    """Error of Stirling's formula for ``ln n!``, for integers ``n >= 1``."""
    n = np.asarray(n, dtype=float)
    out = np.empty_like(n)
    small = n <= 15
    out[small] = _STIRLERR_TABLE[n[small].astype(np.int64)]
    big = n[~small]
    nn = big * big
    out[~small] = (1 / 12 - (1 / 360 - (1 / 1260 - (1 / 1680 - 1 / (1188 * nn)) / nn) / nn) / nn) / big
    return out


def _bd0(x: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Deviance term ``x ln(x/m) + m - x`` free of cancellation near ``x = m``."""
    x, m = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(m, dtype=float))
    out = np.empty_like(x)
    near = np.abs(x - m) < 0.1 * (x + m)
    far = ~near
    xf, mf = x[far], m[far]
    with np.errstate(divide="ignore", invalid="ignore"):
        out[far] = np.where(xf > 0, xf * (np.log(xf) - np.log(mf)), 0.0) + mf - xf

    xn, mn = x[near], m[near]
    v = (xn - mn) / (xn + mn)
    s = (xn - mn) * v
    ej = 2.0 * xn * v
    v2 = v * v
    active = np.ones(s.shape, dtype=bool)
    j = 1
    while active.any():
        ej = ej * v2
        s_new = s + ej / (2 * j + 1)
        active = s_new != s
        s = s_new
        j += 1
        if j > 400:
            break
    out[near] = s
    return out


def _log_binomial_pmf_core(n: int, k: np.ndarray, p: float) -> np.ndarray:
    k = np.asarray(k, dtype=np.int64)
    out = np.empty(k.shape, dtype=float)
    if n == 0:
        out[...] = 0.0
        return out
    if p == 0.0 or p == 1.0:
        hit = n if p == 1.0 else 0
        out[...] = np.where(k == hit, 0.0, -np.inf)
        return out
    q = 1.0 - p
    lo = k == 0
    hi = k == n
    out[lo] = n * math.log1p(-p)
    out[hi] = n * math.log(p)
    mid = ~(lo | hi)
    km = k[mid].astype(float)
    nf = float(n)
    lc = (_stirlerr(np.array([nf]))[0] - _stirlerr(km) - _stirlerr(nf - km)
          - _bd0(km, nf * p) - _bd0(nf - km, nf * q))
    lf = math.log(2.0 * math.pi) + np.log(km) + np.log1p(-km / nf)
    out[mid] = lc - 0.5 * lf
    return out


def log_binomial_pmf(n: int, k: int, p: float) -> float:
    """Natural log of ``C(n,k) p**k (1-p)**(n-k)``.

    Uses the saddle-point decomposition into Stirling-error and deviance
    terms, which keeps the relative error of the log near machine precision
    even for ``n`` in the millions. Returns ``-inf`` when the term vanishes.
    """
    n, k = int(n), int(k)
    if n < 0 or not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    p = _clamp_prob(p)
    return float(_log_binomial_pmf_core(n, np.array([k]), p)[0])


def log_binomial_pmf_all(n: int, p: float) -> np.ndarray:
    """Log binomial pmf for every ``k = 0..n`` as one array."""
    n = int(n)
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    p = _clamp_prob(p)
    return _log_binomial_pmf_core(n, np.arange(n + 1), p)


def _upper_tail(z: float) -> float:
    """P(Z >= z) for a standard normal, accurate for large positive z."""
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def gaussian_interval_mass(mean: float, variance: float, lo: float, hi: float) -> float:
    """Normal probability of ``[lo, hi)``.

    Works with whichever tail is smaller so that intervals far from the
    mean are a difference of two small numbers rather than of two numbers
    close to one.
    """
    if not variance > 0:
        raise DomainError(f"variance must be positive, got {variance!r}")
    if lo > hi:
        raise DomainError(f"empty interval [{lo}, {hi})")
    sd = math.sqrt(variance)
    a = (lo - mean) / sd
    b = (hi - mean) / sd
    if a >= 0:
        mass = _upper_tail(a) - _upper_tail(b)
    elif b <= 0:
        mass = _upper_tail(-b) - _upper_tail(-a)
    else:
        mass = 1.0 - _upper_tail(b) - _upper_tail(-a)
    return max(0.0, mass)
