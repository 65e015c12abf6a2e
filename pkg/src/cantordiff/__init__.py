"""Exact interval-union arithmetic and certified finite-stage analysis
of the difference set between a Cantor set's complement and the set."""

from .intervals import (
    BOX,
    EMPTY,
    HALF,
    UNIT,
    Interval,
    IntervalUnion,
    Rational,
    normalize,
    points_union,
    union_of,
)
from .constructions import (
    DEFAULT_BUDGET,
    CantorStage,
    CentralSpec,
    CompositeSpec,
    GapRecord,
    GreedySpec,
    PerturbedSpec,
    branch_shift,
    builtin_composite_pair,
    builtin_fat_composite,
    builtin_half,
    builtin_perturbed,
    builtin_ternary,
    central_stage,
    composite_stage,
    greedy_certificate,
    greedy_stage,
    half_scaled_components,
    perturbed_stage,
    rightmost_branch_gap_end,
)
from .analysis import (
    DiffBracket,
    DominantGapCertificate,
    GapChainLink,
    ShiftInclusionResult,
    ZoneMeasureRow,
    difference_bracket,
    dominant_gap_certificate,
    inner_difference,
    outer_difference,
    predicted_missing_points,
    prediction_is_complete,
    rightmost_gap_chain,
    shift_inclusion_check,
    zone_measure_rows,
)
from .errors import (
    AvoidanceExhaustedError,
    BudgetExceededError,
    CantorDiffError,
    InvalidSpecError,
    NotCertifiableError,
)

__version__ = "0.1.0"
