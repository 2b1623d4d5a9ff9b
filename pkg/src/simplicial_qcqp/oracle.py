"""Brute-force reference minima for small instances.

Deliberately independent of the solver path: bounds come from scipy's LP
solver, eigenvalue checks from LAPACK, and nothing here touches the D.C.
split, the barrier method or the simplex code.
"""
from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.optimize import linprog

from . import _kernels
from .errors import NoFeasibleGridPointError, PreconditionViolatedError
from .instance import evaluate_objective

MAX_N = 4


@dataclass(frozen=True, eq=False)
class OracleResult:
    value: float
    x: np.ndarray
    method: str          # grid | vertex_enum
    resolution: float    # lattice spacing, 0 for vertex_enum
    guarantee: str
    tolerance: float     # bound on |value - true minimum|


def linear_box(inst):
    """Upper bounds on each variable from ``Ax <= b, x >= 0`` alone."""
    hi = np.empty(inst.n)
    for i in range(inst.n):
        c = np.zeros(inst.n)
        c[i] = -1.0
        res = linprog(c, A_ub=inst.A if inst.m else None, b_ub=inst.b if inst.m else None,
                      bounds=[(0, None)] * inst.n, method="highs")
        if res.status != 0:
            raise PreconditionViolatedError(
                f"cannot bound x[{i}] from the linear rows; pass box_hint")
        hi[i] = -res.fun
    return np.zeros(inst.n), hi


def grid_search(inst, resolution, box_hint=None):
    """Minimum of the objective over the feasible lattice points of spacing
    ``resolution`` (feasibility tolerance ``resolution * 1e-3``)."""
    if inst.n > MAX_N:
        raise PreconditionViolatedError(f"grid oracle limited to n <= {MAX_N}")
    if not resolution > 0:
        raise ValueError("resolution must be positive")
    lo, hi = linear_box(inst) if box_hint is None else map(np.asarray, box_hint)
    lo = np.maximum(np.asarray(lo, dtype=np.float64), 0.0)
    hi = np.asarray(hi, dtype=np.float64)
    counts = (np.floor((hi - lo) / resolution + 1e-9) + 1).astype(np.int64)
    Qk, qk, dk = inst.quad_arrays()
    best, idx = _kernels.grid_scan(
        np.ascontiguousarray(inst.Q), inst.q.copy(), np.ascontiguousarray(inst.A),
        inst.b.copy(), Qk, qk, dk, lo, counts, float(resolution), resolution * 1e-3)
    if idx < 0:
        raise NoFeasibleGridPointError(f"no feasible lattice point at spacing {resolution}")
    x = lo + resolution * np.array(np.unravel_index(idx, tuple(counts)), dtype=np.float64)
    # gradient bound of the objective over the box
    lip = 2.0 * np.linalg.norm(inst.Q, 2) * np.linalg.norm(np.maximum(np.abs(lo), np.abs(hi))) \
        + np.linalg.norm(inst.q)
    tol = float(2.0 * lip * resolution)
    return OracleResult(
        evaluate_objective(inst, x), x, "grid", float(resolution),
        f"within 2*L*h = {tol:.3g} of the minimum for Lipschitz constant L = {lip:.3g}", tol)


def _box_upper(inst):
    if inst.p:
        raise PreconditionViolatedError("vertex enumeration needs p = 0")
    u = np.full(inst.n, np.inf)
    for a, beta in zip(inst.A, inst.b):
        nz = np.flatnonzero(a)
        if nz.size != 1 or a[nz[0]] <= 0:
            raise PreconditionViolatedError("linear rows must be simple upper bounds x_i <= u_i")
        i = nz[0]
        u[i] = min(u[i], beta / a[i])
    if not np.all(np.isfinite(u)) or np.any(u < 0):
        raise PreconditionViolatedError("box must be bounded and nonempty")
    return u


def vertex_enumerate_box(inst):
    """Exact minimum of a concave objective over the box ``0 <= x <= u``."""
    u = _box_upper(inst)
    Qs = 0.5 * (inst.Q + inst.Q.T)
    if np.linalg.eigvalsh(Qs).max() > 1e-10 * (1.0 + np.abs(Qs).max()):
        raise PreconditionViolatedError("objective is not concave (Q not negative semidefinite)")
    best, best_x = np.inf, None
    for corner in product((0, 1), repeat=inst.n):
        x = np.where(np.array(corner) == 1, u, 0.0)
        v = evaluate_objective(inst, x)
        if v < best:
            best, best_x = v, x
    return OracleResult(best, best_x, "vertex_enum", 0.0,
                        "exact: a concave function attains its minimum at a vertex", 0.0)
