"""Uniform-deviation bounds for set families, with exact growth functions and
Monte Carlo verification.

Evaluate the classical exponential uniform bound and its normal-approximation
refinement, compute growth functions and VC dimensions for rays, intervals,
and half-spaces, take exact supremum deviations on concrete samples, and
stress-test every bound against exact binomial tails and reproducible
Monte Carlo estimates.
"""

__version__ = "0.1.0"

from .deviation_bounds import (
    DEFAULT_BE_CONSTANT,
    AuditReport,
    BoundBreakdown,
    BoundQuery,
    CrossoverWindow,
    SingleSetQuery,
    crossover_window,
    exact_binomial_tail,
    hoeffding_single,
    hoeffding_vc,
    paper_variant_audit,
    refined_single,
    refined_single_worst_case,
    refined_vc,
)
from .errors import SizeLimitError, UnsupportedClassError
from .growth_functions import (
    SauerBound,
    TraceReport,
    VCEstimate,
    growth_exact,
    max_trace_count,
    sauer_bound,
    trace_count,
    vc_dimension_estimate,
)
from .hypothesis_classes import (
    Distribution,
    EmpiricalSample,
    Halfspace,
    Hypothesis,
    HypothesisClass,
    Interval,
    Ray,
    contains,
    halfspaces,
    intervals,
    load_sample,
    rays,
    sample,
    save_sample,
    std_gaussian,
    sup_deviation_exact,
    true_probability,
    uniform01,
)
from .normal_approx import TailValue, mills_upper_bound, std_normal_cdf, std_normal_upper_tail
from .simulation import (
    MCConfig,
    MCEstimate,
    VerificationReport,
    estimate_Bn,
    estimate_single_tail,
    verify_bound,
    wilson_interval,
)

__all__ = [
    "__version__",
    "DEFAULT_BE_CONSTANT",
    "AuditReport",
    "BoundBreakdown",
    "BoundQuery",
    "CrossoverWindow",
    "SingleSetQuery",
    "crossover_window",
    "exact_binomial_tail",
    "hoeffding_single",
    "hoeffding_vc",
    "paper_variant_audit",
    "refined_single",
    "refined_single_worst_case",
    "refined_vc",
    "SizeLimitError",
    "UnsupportedClassError",
    "SauerBound",
    "TraceReport",
    "VCEstimate",
    "growth_exact",
    "max_trace_count",
    "sauer_bound",
    "trace_count",
    "vc_dimension_estimate",
    "Distribution",
    "EmpiricalSample",
    "Halfspace",
    "Hypothesis",
    "HypothesisClass",
    "Interval",
    "Ray",
    "contains",
    "halfspaces",
    "intervals",
    "load_sample",
    "rays",
    "sample",
    "save_sample",
    "std_gaussian",
    "sup_deviation_exact",
    "true_probability",
    "uniform01",
    "TailValue",
    "mills_upper_bound",
    "std_normal_cdf",
    "std_normal_upper_tail",
    "MCConfig",
    "MCEstimate",
    "VerificationReport",
    "estimate_Bn",
    "estimate_single_tail",
    "verify_bound",
    "wilson_interval",
]
