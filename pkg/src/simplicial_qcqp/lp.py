"""Small dense linear programs solved by the two-phase primal simplex method."""
from dataclasses import dataclass

import numpy as np

from . import _kernels

PIVOT_TOL = 1e-9
MAX_PIVOTS = 100_000


@dataclass(frozen=True, eq=False)
class DenseLp:
    """``min objective'z``  s.t.  ``a'z >= rhs`` for each inequality row,
    ``a'z == rhs`` for each equality row, ``z >= var_lower`` (``-inf`` = free)."""

    num_vars: int
    objective: np.ndarray
    ineq_rows: tuple = ()
    eq_rows: tuple = ()
    var_lower: np.ndarray = None

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=np.float64)
        if c.shape != (self.num_vars,):
            raise ValueError("objective length must equal num_vars")
        lower = (np.zeros(self.num_vars) if self.var_lower is None
                 else np.asarray(self.var_lower, dtype=np.float64))
        if lower.shape != (self.num_vars,):
            raise ValueError("var_lower length must equal num_vars")
        for a, _ in tuple(self.ineq_rows) + tuple(self.eq_rows):
            if np.shape(a) != (self.num_vars,):
                raise ValueError("constraint row length must equal num_vars")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "var_lower", lower)
        object.__setattr__(self, "ineq_rows", tuple(self.ineq_rows))
        object.__setattr__(self, "eq_rows", tuple(self.eq_rows))


@dataclass(frozen=True, eq=False)
class LpSolution:
    z: np.ndarray
    value: float
    status: str  # optimal | infeasible | unbounded
    reduced_costs: np.ndarray = None
    pivots: int = 0


def _standard_form(lp):
    """Map ``z = offset + M u`` with ``u >= 0`` and build ``A x = b`` over
    ``x = (u, surplus)``."""
    cols = []
    offset = np.zeros(lp.num_vars)
    for k, lo in enumerate(lp.var_lower):
        e = np.zeros(lp.num_vars)
        e[k] = 1.0
        if np.isfinite(lo):
            offset[k] = lo
            cols.append(e)
        else:
            cols.extend([e, -e])
    M = np.array(cols).T
    nu_ = M.shape[1]
    n_ge = len(lp.ineq_rows)
    rows, rhs = [], []
    for idx, (a, beta) in enumerate(lp.ineq_rows):
        a = np.asarray(a, dtype=np.float64)
        surplus = np.zeros(n_ge)
        surplus[idx] = -1.0
        rows.append(np.concatenate([a @ M, surplus]))
        rhs.append(beta - a @ offset)
    for a, beta in lp.eq_rows:
        a = np.asarray(a, dtype=np.float64)
        rows.append(np.concatenate([a @ M, np.zeros(n_ge)]))
        rhs.append(beta - a @ offset)
    A = np.array(rows).reshape(len(rows), nu_ + n_ge)
    b = np.array(rhs, dtype=np.float64)
    cost = np.concatenate([lp.objective @ M, np.zeros(n_ge)])
    return A, b, cost, M, offset


def solve_lp(lp):
    A, b, cost, M, offset = _standard_form(lp)
    m, nx = A.shape
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0
    degenerate_limit = 50 * lp.num_vars

    # phase I: artificial basis
    T = np.zeros((m + 1, nx + m + 1))
    T[:m, :nx] = A
    T[:m, nx:nx + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :nx] = -A.sum(axis=0)
    T[m, -1] = -b.sum()
    basis = np.arange(nx, nx + m, dtype=np.int64)
    status, piv1, _ = _kernels.simplex_run(T, basis, nx + m, PIVOT_TOL,
                                           degenerate_limit, MAX_PIVOTS)
    if status != _kernels.SIMPLEX_OPTIMAL or -T[m, -1] > 1e-9 * (1.0 + b.sum()):
        return LpSolution(np.full(lp.num_vars, np.nan), np.nan, "infeasible", pivots=piv1)

    keep = []
    for i in range(m):
        if basis[i] >= nx:
            cand = np.flatnonzero(np.abs(T[i, :nx]) > PIVOT_TOL)
            if cand.size == 0:
                continue  # redundant row
            _kernels.simplex_pivot(T, basis, i, int(cand[0]))
        keep.append(i)

    # phase II on the original columns
    T2 = np.vstack([T[keep][:, list(range(nx)) + [nx + m]], np.zeros((1, nx + 1))])
    basis2 = np.ascontiguousarray(basis[keep])
    cb = cost[basis2]
    T2[-1, :nx] = cost - cb @ T2[:-1, :nx]
    T2[-1, -1] = -(cb @ T2[:-1, -1])
    T2 = np.ascontiguousarray(T2)
    status, piv2, _ = _kernels.simplex_run(T2, basis2, nx, PIVOT_TOL,
                                           degenerate_limit, MAX_PIVOTS)
    if status == _kernels.SIMPLEX_UNBOUNDED:
        return LpSolution(np.full(lp.num_vars, np.nan), -np.inf, "unbounded",
                          pivots=piv1 + piv2)
    if status != _kernels.SIMPLEX_OPTIMAL:
        raise RuntimeError("simplex pivot limit reached")
    x = np.zeros(nx)
    x[basis2] = T2[:-1, -1]
    z = offset + M @ x[:M.shape[1]]
    return LpSolution(z, float(lp.objective @ z), "optimal",
                      T2[-1, :nx].copy(), piv1 + piv2)
