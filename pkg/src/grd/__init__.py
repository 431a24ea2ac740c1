"""Generalized Rank Dirichlet distributions on the ordered simplex.

GRD(a) has density proportional to ``prod_k y_k ** (a_k - 1)`` on
``{y_1 >= ... >= y_d >= 0, sum y = 1}``.  The package provides parameter
validation, closed-form moments when ``a_1 + ... + a_d`` is zero or a
negative integer, series moments for any real sum, exact and approximate
samplers, and an independent quadrature / Monte Carlo oracle.
"""

from . import oracle
from .checks import check_samples, run_suite
from .compositions import (
    DEFAULT_CAP,
    Composition,
    MixtureTable,
    count_compositions,
    enumerate_compositions,
)
from .core import (
    GrdParams,
    OrderedPoint,
    log_density_unnormalized,
    normalizing_constant_zero_sum,
    ordered_point,
    tail_sums,
    validate_params,
)
from .errors import *  # noqa: F401,F403
from .errors import __all__ as _error_names
from .mixture import loggap_cdf, loggap_law_zero_sum, loggap_mgf, loggap_moments, mixture_weights
from .moments import (
    calibrate_first_moment,
    mean_vector_m1,
    negative_moment_y1,
    positive_moments,
    ratio_moment_zero_sum,
)
from .samplers import (
    RNG_IDENTITY,
    iter_samples,
    make_rng,
    make_sampler,
    sample,
    sample_approximate_general,
    sample_exact_negative_integer,
    sample_rejection_oracle,
    sample_zero_sum,
)
from .series import (
    SeriesDiagnostics,
    expected_power_y1_series,
    loggap_mgf_series,
    loggap_moments_series,
    signed_series_weights,
    y1_moment,
)

__version__ = "0.1.0"

__all__ = [
    "oracle",
    "run_suite",
    "check_samples",
    "DEFAULT_CAP",
    "Composition",
    "MixtureTable",
    "count_compositions",
    "enumerate_compositions",
    "GrdParams",
    "OrderedPoint",
    "log_density_unnormalized",
    "normalizing_constant_zero_sum",
    "ordered_point",
    "tail_sums",
    "validate_params",
    "loggap_cdf",
    "loggap_law_zero_sum",
    "loggap_mgf",
    "loggap_moments",
    "mixture_weights",
    "calibrate_first_moment",
    "mean_vector_m1",
    "negative_moment_y1",
    "positive_moments",
    "ratio_moment_zero_sum",
    "RNG_IDENTITY",
    "iter_samples",
    "make_rng",
    "make_sampler",
    "sample",
    "sample_approximate_general",
    "sample_exact_negative_integer",
    "sample_rejection_oracle",
    "sample_zero_sum",
    "SeriesDiagnostics",
    "expected_power_y1_series",
    "loggap_mgf_series",
    "loggap_moments_series",
    "signed_series_weights",
    "y1_moment",
    *_error_names,
]
