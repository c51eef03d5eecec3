"""Verification laboratory for integral inequalities satisfied by functions
whose derivative magnitude (or a power of it) is s-convex in the second sense.

The package evaluates both sides of each inequality in closed form or by
adaptive quadrature, certifies the convexity hypotheses by grid sampling,
and property-tests identities, bounds, reductions and cross-checks over
seeded random instances.
"""

from .errors import (
    DepthExhausted,
    DomainError,
    EvalError,
    ExponentError,
    GenerationError,
    LabError,
    MissingParam,
    ParseError,
    SuiteError,
)
from .means import (
    OrderedInterval,
    arithmetic_mean,
    gen_log_mean,
    gen_log_mean_pow,
    geometric_mean,
    power_diff_quotient,
)
from .quadrature import QuadResult, integrate
from .funcmodel import (
    CertResult,
    FuncHandle,
    GenConfig,
    PowerSum,
    SParam,
    certify_concave,
    certify_s_convex,
    gen_certified_instance,
    handle_from_power_sum,
    powersum_integral,
)
from .bounds import (
    BoundReport,
    HolderPair,
    bound_ms,
    bound_prior,
    bound_se2,
    bound_se5,
    bound_se6,
    bullen_classic_rhs,
    bullen_defect_signed,
    bullen_type_defect,
    evaluate_bound,
    hadamard_s_triple,
    hadamard_triple,
    lemma_identity_rhs,
    trapezoid_defect,
)
from .means_bounds import (
    prop_power_lhs,
    prop_recip_lhs,
    prop_rhs,
    prop_se4_rhs_printed,
    se4_discrepancy,
)
from .harness import (
    BOUND_THEOREMS,
    SuiteConfig,
    SuiteReport,
    run_bound_suite,
    run_identity_suite,
    run_prop_crosscheck_suite,
    run_reduction_suite,
)
from .cli import dispatch, parse_function_dsl

__version__ = "0.1.0"
