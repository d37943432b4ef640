"""meanforge: weighted binary means, the mean-composition calculus that
generates them, operator (matrix) versions, and a randomized verification
suite for the inequality chains and identities they satisfy."""

from .scalars import (
    MEANS,
    MeanKind,
    PositivePair,
    SymmetricMean,
    Weight,
    WeightClass,
    arithmetic_mean,
    classic_mean,
    geometric_mean,
    harmonic_mean,
    identric_mean,
    identric_mean_dual,
    log_mean,
    log_mean_dual,
    weighted_arithmetic,
    weighted_geometric,
    weighted_harmonic,
    weighted_standard,
)
from .weighted import (
    second_weighted_log,
    second_weighted_log_composed,
    second_weighted_log_dual,
    second_weighted_log_dual_composed,
    weighted_identric,
    weighted_identric_composed,
    weighted_identric_dual,
    weighted_identric_dual_composed,
    weighted_log,
    weighted_log_composed,
    weighted_log_dual,
    weighted_log_dual_composed,
)
from .powers import (
    StolarskyBranch,
    StolarskyParams,
    binomial_mean,
    power_difference_mean,
    power_exponential_mean,
    power_family,
    power_log_mean,
    second_power_log_mean,
    stolarsky_from_params,
    stolarsky_mean,
    weighted_binomial,
    weighted_power,
    weighted_power_explicit,
    weighted_stolarsky,
    weighted_stolarsky_explicit,
)
from .algebra import (
    GridConfig,
    MeanTrace,
    NonConvergence,
    StabilizabilityReport,
    StabilizeResult,
    WeightedFamily,
    check_cross_mean,
    check_stabilizable,
    check_stable,
    resultant,
    stabilize_fixed_point,
    table1,
    weighted_construct,
)
from .operators import (
    DimensionMismatch,
    HPDMatrix,
    LoewnerResult,
    NonPositive,
    RepresentingFunction,
    apply_mean,
    check_operator_chains,
    loewner_leq,
    op_identric_mean,
    op_log_integral,
    op_log_mean,
    op_weighted_identric,
    op_weighted_log,
    op_weighted_standard,
    random_hpd,
    read_matrix,
    write_matrix,
)
from .verify import CHAIN_IDS, SuiteReport, VerifyConfig, check_chain, run_suite

__version__ = "0.1.0"
