"""Negative multinomial distribution: mass function, sampling, exact mixed
moments, symbolic moment formulas and brute-force verification."""

from .combinatorics import binomial, falling_factorial, stirling2, stirling_row
from .corpus import ComparisonReport, compare_golden, load_corpus
from .distribution import Params, log_pmf, pmf, sample, validate_params
from .errors import (
    DimensionMismatch,
    EmptyDimension,
    ExactModeUnsupported,
    InvalidParams,
    MassAtLeastOne,
    NegativeProbability,
    NegMultinomialError,
    NoConvergence,
    NonPositiveR,
    NotInCorpus,
)
from .moments import (
    central_moment,
    central_moment_from_noncentral,
    factorial_moment,
    mean_vector,
    noncentral_moment,
)
from .multiindex import box_array, iter_box
from .oracle import OracleEstimate, mc_moment, truncated_moment
from .symbolic import (
    MomentPolynomial,
    RPolynomial,
    derive_central_poly,
    derive_noncentral_poly,
    expand_to_r_poly,
    poly_eval,
)

__version__ = "0.1.0"

__all__ = [
    "ComparisonReport",
    "DimensionMismatch",
    "EmptyDimension",
    "ExactModeUnsupported",
    "InvalidParams",
    "MassAtLeastOne",
    "MomentPolynomial",
    "NegMultinomialError",
    "NegativeProbability",
    "NoConvergence",
    "NonPositiveR",
    "NotInCorpus",
    "OracleEstimate",
    "Params",
    "RPolynomial",
    "binomial",
    "box_array",
    "central_moment",
    "central_moment_from_noncentral",
    "compare_golden",
    "derive_central_poly",
    "derive_noncentral_poly",
    "expand_to_r_poly",
    "factorial_moment",
    "falling_factorial",
    "iter_box",
    "load_corpus",
    "log_pmf",
    "mc_moment",
    "mean_vector",
    "noncentral_moment",
    "pmf",
    "poly_eval",
    "sample",
    "stirling2",
    "stirling_row",
    "truncated_moment",
    "validate_params",
]
