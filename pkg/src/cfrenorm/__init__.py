"""cfrenorm: exact renormalization of circle rotations.

A two-interval exchange (circle rotation) renormalizes by inducing on either
[1-x, 1] or [0, 1-x].  Driving those choices from a point y of the square, or
from a named decision rule, produces every semi-regular continued fraction of
x, a substitution coding of the rotation orbit, and the matrix cocycles whose
growth rates the Monte Carlo harness estimates.  All dynamical state is exact
(rational or quadratic-irrational), so boundary cases are decided, never
rounded.
"""

from .exact import (
    ExactNumber,
    GOLDEN,
    LEFT,
    ONE,
    RIGHT,
    RadicandError,
    SidedPoint,
    ZERO,
    complement_digits,
    evaluate_cf,
    gauss_step,
    parse_exact,
    regular_cf_digits,
    sided,
    sqrt_fixed_point,
)
from .renorm import (
    GREEN,
    RED,
    FastStep,
    OrbitTerminated,
    PartitionCell,
    PG,
    PR,
    SlowStep,
    branch_of,
    classify_fast,
    fast_orbit,
    slow_orbit,
    t_fast,
    t_slow,
)
from .words import (
    EndpointLengths,
    EndpointWords,
    SubMatrix,
    Substitution,
    Word,
    approx_sequence,
    cell_eigenvalues,
    cocycle_matrix,
    coding_prefix,
    compose_cocycle,
    endpoint_length_series,
    endpoint_word_series,
    fast_cell_matrix,
    fast_cell_matrix_chronological,
    fast_cell_substitution,
    mobius_cell_matrix,
    sigma_fast,
    sigma_slow,
)
from .oracle import (
    NestedInterval,
    SearchBoundExceeded,
    first_return_time,
    nested_intervals,
    omega,
    slow_approx_bruteforce,
)
from .cfexp import (
    Alpha,
    Backward,
    ConvergentTable,
    CounterAlpha,
    Expansion,
    FromStream,
    FromY,
    Lehner,
    NearestInteger,
    Regular,
    SemiRegularCF,
    Strategy,
    expand,
    insert,
    inverse_branch_matrix,
    mobius_accumulate,
    singularize,
    y_for_strategy,
)
from .growth import (
    GrowthSeries,
    LEVY_CONSTANT,
    LevySummary,
    growth_series,
    monte_carlo_levy,
    sample_x,
    slow_vs_fast_contrast,
)

__version__ = "0.1.0"
