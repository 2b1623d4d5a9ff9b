"""Global optimisation of non-convex QCQPs whose objective has a few negative
eigenvalues, by simplicial branch and bound in the outcome space of the
concave part."""
from ._backend import BACKEND
from .bnb import (
    BnbNode,
    BnbState,
    Incumbent,
    SolveReport,
    SolverParams,
    Status,
    gap_bound,
    initialize,
    iterate,
    iteration_cap,
    solve,
)
from .convex import (
    ConvexProgram,
    ConvexSolution,
    build_cp,
    compute_outcome_bounds,
    find_interior_point,
    solve_convex,
    solve_cp,
)
from .dc import DcDecomposition, OutcomePoint, decompose, nu, outcome_map
from .geometry import (
    Simplex,
    barycentric_to_point,
    bisect,
    cm_volume,
    diameter,
    initial_simplex,
    is_degenerate,
    longest_edge,
)
from .instance import (
    QcqpInstance,
    QuadConstraint,
    ValidationReport,
    constraint_residuals,
    evaluate_objective,
    validate_instance,
)
from .io import emit_instance, emit_report, generate_instance, parse_instance
from .lp import DenseLp, LpSolution, solve_lp
from .oracle import OracleResult, grid_search, vertex_enumerate_box
from .relaxation import build_lp, envelope_values, lower_bound

__version__ = "0.1.0"
