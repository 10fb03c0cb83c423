"""Nonlinear coclosed representatives on oriented graphs."""

from .errors import (
    CoclosedError,
    CriterionViolatedError,
    DegenerateWeightError,
    DimensionMismatchError,
    DisconnectedError,
    DuplicateEdgeError,
    EigenFailedError,
    GraphError,
    IndexOutOfRangeError,
    IsACactusError,
    MaxIterationsError,
    NoObstructionFoundError,
    NonpositiveWeightError,
    NotACactusError,
    NotMeanZeroError,
    RhsNotMeanZeroError,
    SelfLoopError,
    SolveFailedError,
)
from .cactus import (
    CactusCriterionReport,
    CactusReport,
    CycleForm,
    ObstructionWitness,
    SharedPathWitness,
    analyze_cactus,
    cycle_basis,
    obstruction_witness,
    random_cactus,
    random_non_cactus,
    verify_cactus_criterion,
)
from .graphs import (
    OrientedGraph,
    betti_1,
    build_graph,
    coboundary,
    divergence,
    laplacian_matrix,
    mean_zero_project,
)
from .hodge import (
    hodge_project,
    poincare_constant,
    solve_laplacian,
    weighted_divergence,
    weighted_hodge_project,
    weighted_laplacian_solve,
)
from .newton import (
    MIN_DAMPED_DECREASE,
    EnergyProblem,
    NewtonIteration,
    NewtonReport,
    SelfConcordanceReport,
    damped_phase_bound,
    energy,
    gradient,
    hessian_weights,
    minimize,
    newton_decrement,
    self_concordance_check,
)
from .potentials import (
    COSH,
    QUADRATIC,
    AdmissibilityReport,
    Potential,
    check_admissible,
    cosh_power,
    find_obstruction_scale,
    obstruction_gap,
    power_alpha,
)
from .projector import (
    CoclosednessCheck,
    ProjectionResult,
    cubic_approx,
    differential,
    is_nonlinear_coclosed,
    oddness_check,
    project,
    third_derivative_origin,
)

from . import jsonio

__version__ = "0.1.0"
