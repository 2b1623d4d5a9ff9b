"""Convex subproblems over the feasible set.

All programs share the constraint data of a :class:`QcqpInstance` and are solved
by a primal log-barrier Newton method started from a strictly feasible point:

* ``CP(lam)``: ``min f0(x) - 2 lam'Cx``, the supporting-hyperplane problem;
* linear-objective bound problems ``min/max C_i x``;
* phase I, ``min s`` subject to every residual ``<= s``.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .dc import outcome_map
from .errors import (
    DimensionError,
    NumericError,
    PreconditionViolatedError,
    SlaterViolatedError,
    UnboundedFeasibleSetError,
)
from .instance import constraint_residuals

TOL_INTERIOR = 1e-6
GAP_TOL = 1e-9            # outer stop: (#constraints) / t <= GAP_TOL
NEWTON_TOL = 1e-10        # inner stop: decrement^2 / 2 <= NEWTON_TOL
MAX_NEWTON = 200          # per centring step
UNBOUNDED_FLOOR = -1e12
PHASE1_FLOOR = -1.0       # phase I keeps s >= PHASE1_FLOOR so it stays bounded
PHASE1_RADIUS = 1e6       # ... and x_i <= PHASE1_RADIUS * (1 + data scale)


class Sense(str, Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class ConvexStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    NUMERIC_FAILURE = "numeric_failure"


@dataclass(frozen=True, eq=False)
class ConvexProgram:
    """``min|max x'Px + c'x`` over the instance's feasible set."""

    P: np.ndarray
    c: np.ndarray
    instance: object
    sense: Sense = Sense.MINIMIZE

    def __post_init__(self):
        if self.sense == Sense.MAXIMIZE and np.any(self.P != 0):
            raise ValueError("maximize is only supported for linear objectives")

    def objective(self, x):
        return float(x @ self.P @ x + self.c @ x)


@dataclass(frozen=True, eq=False)
class ConvexSolution:
    x: np.ndarray
    value: float
    status: ConvexStatus
    kkt_residual: float
    newton_steps: int = 0


def _constraint_arrays(inst):
    n = inst.n
    G = np.vstack([inst.A, -np.eye(n)])
    h = np.concatenate([inst.b, np.zeros(n)])
    Qk, qk, dk = inst.quad_arrays()
    return G, h, Qk, qk, dk


def _barrier(P, c, G, h, Qk, qk, dk, z0):
    G = np.ascontiguousarray(G)
    return _kernels.barrier_solve(
        np.ascontiguousarray(P, dtype=np.float64),
        np.ascontiguousarray(c, dtype=np.float64),
        np.ascontiguousarray(G.T), G, h, Qk, qk, dk,
        np.ascontiguousarray(z0, dtype=np.float64),
        1.0, 10.0, GAP_TOL, NEWTON_TOL, MAX_NEWTON, UNBOUNDED_FLOOR,
    )


def _polish(P, c, G, h, Qk, qk, dk, z, t):
    """Newton steps on the KKT system of the constraints the barrier point
    identifies as active (dual estimate exceeds slack).

    Returns ``(z, kkt_residual)`` or ``None`` when the refined point is not
    feasible, dual feasible and at least as good as ``z``.
    """
    def quad(v, k):
        return v @ Qk[k] @ v + qk[k] @ v

    sl = h - G @ z
    sq = np.array([dk[k] - quad(z, k) for k in range(dk.size)])
    act_l = np.flatnonzero(1.0 / (t * sl) > sl)
    act_q = np.flatnonzero(1.0 / (t * sq) > sq)
    na = act_l.size + act_q.size
    if na == 0:
        return None
    u = np.concatenate([1.0 / (t * sl[act_l]), 1.0 / (t * sq[act_q])])
    zz = z.copy()
    N = z.size
    for _ in range(8):
        J = np.vstack([G[act_l]] + [2.0 * (Qk[k] @ zz) + qk[k] for k in act_q]).reshape(na, N)
        stat = 2.0 * (P @ zz) + c + J.T @ u
        feas = np.concatenate([G[act_l] @ zz - h[act_l],
                               [quad(zz, k) - dk[k] for k in act_q]])
        H = 2.0 * P
        for i, k in enumerate(act_q):
            H = H + 2.0 * u[act_l.size + i] * Qk[k]
        K = np.block([[H, J.T], [J, np.zeros((na, na))]])
        step = np.linalg.lstsq(K, -np.concatenate([stat, feas]), rcond=None)[0]
        zz = zz + step[:N]
        u = u + step[N:]
        if np.max(np.abs(step)) <= 1e-15 * (1.0 + np.max(np.abs(zz))):
            break
    scale = 1.0 + np.max(np.abs(np.concatenate([h, dk])))
    sl = h - G @ zz
    sq = np.array([dk[k] - quad(zz, k) for k in range(dk.size)])
    worst = max(-sl.min(), -sq.min() if sq.size else -np.inf)
    J = np.vstack([G[act_l]] + [2.0 * (Qk[k] @ zz) + qk[k] for k in act_q]).reshape(na, N)
    stat = np.max(np.abs(2.0 * (P @ zz) + c + J.T @ u))
    before = z @ P @ z + c @ z
    after = zz @ P @ zz + c @ zz
    ok = (np.all(np.isfinite(zz)) and worst <= 1e-12 * scale and u.min() >= -1e-9
          and stat <= 1e-9 * (1.0 + np.max(np.abs(c)))
          and after <= before + 1e-12 * (1.0 + abs(before)))
    if not ok:
        return None
    return zz, float(max(stat, worst, 0.0))


def build_cp(dc, lam, instance=None):
    lam = np.asarray(lam, dtype=np.float64)
    if lam.shape != (dc.r,):
        raise DimensionError(f"lambda must have length {dc.r}, got shape {lam.shape}")
    return ConvexProgram(dc.Qplus, dc.q - 2.0 * (dc.C.T @ lam), instance)


def solve_convex(prog, start, instance=None):
    """Solve ``prog`` from the strictly feasible ``start``.

    ``instance`` overrides ``prog.instance``; the result is a deterministic
    function of the inputs.
    """
    inst = instance if instance is not None else prog.instance
    if inst is None:
        raise ValueError("no constraint data: pass instance=")
    start = np.asarray(start, dtype=np.float64)
    if constraint_residuals(inst, start).max() >= 0.0:
        raise PreconditionViolatedError("start point is not strictly feasible")
    G, h, Qk, qk, dk = _constraint_arrays(inst)
    sign = -1.0 if prog.sense == Sense.MAXIMIZE else 1.0
    x, code, t, steps, dec2 = _barrier(prog.P, sign * prog.c, G, h, Qk, qk, dk, start)
    if code == _kernels.BARRIER_UNBOUNDED:
        return ConvexSolution(x, -sign * np.inf, ConvexStatus.UNBOUNDED, np.inf, steps)
    ncons = G.shape[0] + dk.shape[0]
    kkt = (ncons + np.sqrt(ncons * max(dec2, 0.0))) / t
    if code == _kernels.BARRIER_OK:
        polished = _polish(prog.P, sign * prog.c, G, h, Qk, qk, dk, x, t)
        if polished is not None:
            x, kkt = polished
    value = prog.objective(x)
    status = ConvexStatus.OPTIMAL
    if (code != _kernels.BARRIER_OK or kkt > 1e-8 * (1.0 + abs(value))
            or not constraint_residuals(inst, x).feasible()):
        status = ConvexStatus.NUMERIC_FAILURE
    return ConvexSolution(x, value, status, float(kkt), steps)


def find_interior_point(inst):
    """A point whose every residual is at most ``-TOL_INTERIOR``."""
    n = inst.n
    G, h, Qk, qk, dk = _constraint_arrays(inst)
    # variables z = (x, s): G x - s <= h, x'Q_k x + q_k'x - s <= d_k, -s <= -floor,
    # plus a far-away cap on x so that an unbounded feasible set cannot send
    # the phase-I iterates off to infinity
    radius = PHASE1_RADIUS * (1.0 + max(np.abs(h).max(initial=0.0), np.abs(dk).max(initial=0.0)))
    Gz = np.vstack([np.hstack([G, -np.ones((G.shape[0], 1))]),
                    np.append(np.zeros(n), -1.0)[None, :],
                    np.hstack([np.eye(n), np.zeros((n, 1))])])
    hz = np.concatenate([h, [-PHASE1_FLOOR], np.full(n, radius)])
    p = dk.shape[0]
    Qz = np.zeros((p, n + 1, n + 1))
    Qz[:, :n, :n] = Qk
    qz = np.hstack([qk, -np.ones((p, 1))])
    x0 = np.zeros(n)
    s0 = max(constraint_residuals(inst, x0).max(), PHASE1_FLOOR) + 1.0
    z0 = np.append(x0, s0)
    c = np.zeros(n + 1)
    c[n] = 1.0
    z, code, *_ = _barrier(np.zeros((n + 1, n + 1)), c, Gz, hz, Qz, qz, dk, z0)
    if code == _kernels.BARRIER_NUMERIC:
        raise NumericError("phase I barrier failed")
    x = z[:n]
    worst = constraint_residuals(inst, x).max()
    if worst > -TOL_INTERIOR:
        raise SlaterViolatedError(
            f"no strictly feasible point: smallest attainable max residual is {worst:.3g}")
    return x


def solve_cp(dc, inst, lam, start):
    """``(mu, x, y)``: optimal value, minimiser and its outcome point for CP(lam)."""
    sol = solve_convex(build_cp(dc, lam), start, inst)
    if sol.status == ConvexStatus.UNBOUNDED:
        raise UnboundedFeasibleSetError("CP(lambda) is unbounded below")
    if sol.status != ConvexStatus.OPTIMAL:
        raise NumericError(f"CP(lambda) failed for lambda={np.asarray(lam).tolist()}")
    return sol.value, sol.x, outcome_map(dc, sol.x)


def compute_outcome_bounds(dc, inst, start):
    """Componentwise range of ``Cx`` over the feasible set.

    Each end is widened by the solver's duality-gap bound so the returned box
    contains the exact range.
    """
    ylo = np.empty(dc.r)
    yhi = np.empty(dc.r)
    zero = np.zeros((dc.n, dc.n))
    for i in range(dc.r):
        for sense, out in ((Sense.MINIMIZE, ylo), (Sense.MAXIMIZE, yhi)):
            sol = solve_convex(ConvexProgram(zero, dc.C[i], inst, sense), start)
            if sol.status == ConvexStatus.UNBOUNDED:
                raise UnboundedFeasibleSetError(
                    f"C_{i}x is unbounded on the feasible set ({sense.value})")
            if sol.status != ConvexStatus.OPTIMAL:
                raise NumericError(f"bound subproblem {i} ({sense.value}) failed")
            pad = sol.kkt_residual if sense == Sense.MAXIMIZE else -sol.kkt_residual
            out[i] = sol.value + pad
    return ylo, yhi
