"""Outcome-space simplicial branch and bound.

The search runs over ``yy = Cx`` in ``R^r``.  Every node is a simplex together
with the CP values ``mu`` of its vertices; its bound comes from the LP in
:mod:`relaxation`.  Each iteration bisects the best node along its longest
edge, solves one convex program at the edge midpoint (whose value is shared by
both children) and bounds the two children with one LP each.
"""
import heapq
import math
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .convex import compute_outcome_bounds, find_interior_point, solve_cp
from .dc import decompose, nu
from .errors import (
    AlreadyConvexError,
    DegenerateCoverError,
    NumericError,
    QcqpError,
    SlaterViolatedError,
    UnboundedFeasibleSetError,
    ValidationError,
)
from .geometry import Simplex, bisect, diameter, initial_simplex
from .instance import validate_instance
from .relaxation import lower_bound


class Status(str, Enum):
    EPS_OPTIMAL = "eps_optimal"
    ITER_LIMIT = "iter_limit"
    TIME_LIMIT = "time_limit"
    INFEASIBLE = "infeasible"
    UNBOUNDED_SET = "unbounded_set"
    ALREADY_CONVEX = "already_convex"
    NUMERIC_FAILURE = "numeric_failure"


@dataclass(frozen=True)
class SolverParams:
    epsilon: float = 1e-4
    max_iters: int = None
    time_limit_seconds: float = None
    record_supports: bool = False

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


@dataclass(eq=False)
class BnbNode:
    simplex: Simplex
    mu: np.ndarray
    lb: float
    id: int


@dataclass(eq=False)
class Incumbent:
    x_star: np.ndarray
    y_star: object
    ub: float


@dataclass(eq=False)
class BnbState:
    inst: object
    dc: object
    params: SolverParams
    x_interior: np.ndarray
    ylo: np.ndarray
    yhi: np.ndarray
    incumbent: Incumbent
    lb: float
    open_nodes: list = field(default_factory=list)
    iteration: int = 0
    cp_solves: int = 0
    lp_solves: int = 0
    bound_solves: int = 0
    phase1_solves: int = 0
    next_id: int = 0
    status: Status = None
    node_log: list = field(default_factory=list)
    supports: list = field(default_factory=list)

    def push(self, simplex, mu, lb):
        node = BnbNode(simplex, mu, lb, self.next_id)
        self.next_id += 1
        heapq.heappush(self.open_nodes, (node.lb, node.id, node))
        return node

    def check_termination(self):
        if self.incumbent.ub - self.lb <= self.params.epsilon:
            self.status = Status.EPS_OPTIMAL


@dataclass(eq=False)
class SolveReport:
    status: Status
    x_star: np.ndarray = None
    y_star: object = None
    ub: float = math.inf
    lb: float = -math.inf
    gap: float = math.inf
    epsilon: float = None
    iterations: int = 0
    cp_solves: int = 0
    lp_solves: int = 0
    bound_solves: int = 0
    phase1_solves: int = 0
    wall_time_seconds: float = 0.0
    ylo: np.ndarray = None
    yhi: np.ndarray = None
    node_log: list = field(default_factory=list)
    supports: list = field(default_factory=list)
    message: str = ""

    @property
    def value(self):
        return self.ub


def gap_bound(node):
    """``4 d_S d(S)``: bound on ``UB - LB(S)`` at a best-first selected node."""
    S = node.simplex if isinstance(node, BnbNode) else node
    d_s = float(np.max(np.linalg.norm(S.vertices, axis=1)))
    return 4.0 * d_s * diameter(S)


def iteration_cap(ylo, yhi, epsilon):
    """Worst-case iteration count ``floor(prod(w) / sqrt(r+1) * (8 sqrt2 r dbar / eps)^r)``.

    Returns ``math.inf`` when the value overflows.
    """
    ylo = np.asarray(ylo, dtype=np.float64)
    yhi = np.asarray(yhi, dtype=np.float64)
    if np.any(yhi < ylo) or not epsilon > 0:
        raise ValueError("need yhi >= ylo and epsilon > 0")
    r = ylo.size
    width = yhi - ylo
    base = float(ylo @ ylo)
    dbar = max(math.sqrt(base - ylo[s] ** 2 + (ylo[s] + r * width[s]) ** 2) for s in range(r))
    try:
        value = float(np.prod(width)) / math.sqrt(r + 1) * (8.0 * math.sqrt(2.0) * r * dbar / epsilon) ** r
    except OverflowError:
        return math.inf
    if not math.isfinite(value):
        return math.inf
    # floor of the exact-arithmetic value; absorbs rounding in the sqrt factors
    return int(math.floor(value * (1.0 + 1e-12)))


def _record_support(state, lam, mu):
    if state.params.record_supports:
        state.supports.append((np.array(lam, dtype=np.float64), mu))


def initialize(inst, params):
    """Bounds, initial simplex, vertex CPs, incumbent and root bound.

    Returns a :class:`BnbState`; when the outcome box is a single point the
    state is already terminated and holds no nodes.
    """
    report = validate_instance(inst)
    if not report.valid:
        raise ValidationError("invalid instance", report.violations)
    dc = decompose(inst)
    x_int = find_interior_point(inst)
    ylo, yhi = compute_outcome_bounds(dc, inst, x_int)

    try:
        S0 = initial_simplex(ylo, yhi)
    except DegenerateCoverError:
        mu, x, y = solve_cp(dc, inst, ylo, x_int)
        inc = Incumbent(x, y, nu(y))
        state = BnbState(inst, dc, params, x_int, ylo, yhi, inc, inc.ub,
                         cp_solves=1, bound_solves=2 * dc.r, phase1_solves=1)
        _record_support(state, ylo, mu)
        state.status = Status.EPS_OPTIMAL
        return state

    if np.any(yhi == ylo):
        # a zero-width direction alone would collapse S0; widen it by a hair
        pad = 1e-9 * (1.0 + np.abs(ylo))
        yhi = np.where(yhi == ylo, ylo + pad, yhi)
        S0 = initial_simplex(ylo, yhi)

    supports = [solve_cp(dc, inst, v, x_int) for v in S0.vertices]
    mu0 = np.array([s[0] for s in supports])
    values = [nu(s[2]) for s in supports]
    best = int(np.argmin(values))
    inc = Incumbent(supports[best][1], supports[best][2], values[best])
    root = lower_bound(S0, mu0)
    state = BnbState(inst, dc, params, x_int, ylo, yhi, inc, root.lb,
                     cp_solves=len(supports), lp_solves=1,
                     bound_solves=2 * dc.r, phase1_solves=1)
    for v, (mu, _, _) in zip(S0.vertices, supports):
        _record_support(state, v, mu)
    state.push(S0, mu0, root.lb)
    state.check_termination()
    return state


def iterate(state):
    """One pass of subdivision, upper-bound update, bounding/pruning and selection."""
    if state.status is not None or not state.open_nodes:
        raise RuntimeError("iterate() called on a finished search")
    eps = state.params.epsilon
    _, _, node = heapq.heappop(state.open_nodes)
    ub_selected = state.incumbent.ub
    S1, S2, eta, (i, j) = bisect(node.simplex)

    mu_eta, x_eta, y_eta = solve_cp(state.dc, state.inst, eta, state.x_interior)
    state.cp_solves += 1
    _record_support(state, eta, mu_eta)
    u = nu(y_eta)
    if u < state.incumbent.ub:
        state.incumbent = Incumbent(x_eta, y_eta, u)

    mu1 = node.mu.copy()
    mu1[j] = mu_eta
    mu2 = node.mu.copy()
    mu2[i] = mu_eta
    children = []
    for child, mu in ((S1, mu1), (S2, mu2)):
        bound = lower_bound(child, mu)
        if math.isfinite(bound.lb):
            state.lp_solves += 1
        if state.incumbent.ub - bound.lb > eps:
            children.append(state.push(child, mu, bound.lb))

    state.node_log.append({
        "iter": state.iteration,
        "lb": state.lb,
        "ub": ub_selected,
        "node_lb": node.lb,
        "node_diameter": diameter(node.simplex),
        "gap_bound": gap_bound(node),
        "children": len(children),
        "cp_solves": state.cp_solves,
        "lp_solves": state.lp_solves,
    })
    state.iteration += 1
    if state.open_nodes:
        state.lb = state.open_nodes[0][0]
        state.check_termination()
    else:
        # every region fathomed within eps
        ub = state.incumbent.ub
        lb = max(node.lb, ub - eps)
        while ub - lb > eps:  # ub - eps can round one ulp low
            lb = np.nextafter(lb, np.inf)
        state.lb = float(lb)
        state.status = Status.EPS_OPTIMAL
    return state


def _report(state, status, t0, message=""):
    inc = state.incumbent
    return SolveReport(
        status=status, x_star=inc.x_star, y_star=inc.y_star, ub=inc.ub, lb=state.lb,
        gap=inc.ub - state.lb, epsilon=state.params.epsilon, iterations=state.iteration,
        cp_solves=state.cp_solves, lp_solves=state.lp_solves,
        bound_solves=state.bound_solves, phase1_solves=state.phase1_solves,
        wall_time_seconds=time.perf_counter() - t0, ylo=state.ylo, yhi=state.yhi,
        node_log=state.node_log, supports=state.supports, message=message,
    )


def solve(inst, params=None):
    """Run the search to eps-optimality or a limit and summarise it."""
    params = params or SolverParams()
    t0 = time.perf_counter()
    failures = (
        (AlreadyConvexError, Status.ALREADY_CONVEX),
        (SlaterViolatedError, Status.INFEASIBLE),
        (UnboundedFeasibleSetError, Status.UNBOUNDED_SET),
        (NumericError, Status.NUMERIC_FAILURE),
    )
    try:
        state = initialize(inst, params)
    except ValidationError:
        raise
    except QcqpError as exc:
        for kind, status in failures:
            if isinstance(exc, kind):
                return SolveReport(status, epsilon=params.epsilon,
                                   wall_time_seconds=time.perf_counter() - t0,
                                   message=str(exc))
        raise

    while state.status is None:
        if params.max_iters is not None and state.iteration >= params.max_iters:
            return _report(state, Status.ITER_LIMIT, t0)
        if (params.time_limit_seconds is not None
                and time.perf_counter() - t0 >= params.time_limit_seconds):
            return _report(state, Status.TIME_LIMIT, t0)
        try:
            iterate(state)
        except QcqpError as exc:
            return _report(state, Status.NUMERIC_FAILURE, t0, str(exc))
    return _report(state, state.status, t0)
