"""Entropic uncertainty of spin-coherent states under coarse-grained magnetization measurements."""

from .coarse import (
    BinnedPMF,
    BinningScheme,
    DegenerateVarianceError,
    bin_index,
    binned_entropy,
    binned_entropy_sum,
    binned_pmf,
    binned_pmf_exact,
    binned_pmf_gaussian,
    concentration_bin,
    scaling_sweep,
)
from .collective import (
    CollectivePMF,
    collective_entropy,
    collective_entropy_asymptotic,
    collective_moments,
    collective_pmf,
    degenerate_sum_asymptotic,
)
from .numerics import (
    DomainError,
    NormalizationError,
    Pmf,
    binary_entropy,
    gaussian_interval_mass,
    log_binomial_pmf,
    log_sum_exp,
    shannon_entropy,
)
from .states import (
    MomentSummary,
    SpinCoherentState,
    eur_product_bound,
    eur_sum_product,
    magnetization_expectations,
    product_basis_entropy,
    robertson_bound_check,
    x_projection_prob,
)

__version__ = "0.1.0"
