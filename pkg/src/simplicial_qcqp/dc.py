"""Difference-of-convex split of the objective: Q = Q+ - C'C."""
from dataclasses import dataclass

import numpy as np

from .errors import AlreadyConvexError, DimensionError
from .instance import tol_eig
from .linalg import symmetric_eig


@dataclass(frozen=True, eq=False)
class DcDecomposition:
    """``x'Qx + q'x = f0(x) - ||Cx||^2`` with ``f0(x) = x'Q+x + q'x``.

    Row ``i`` of ``C`` is ``sqrt(|lam_i|) v_i`` for the i-th most negative
    eigenpair of ``Q``.
    """

    r: int
    Qplus: np.ndarray
    C: np.ndarray
    q: np.ndarray
    eigenvalues: np.ndarray

    @property
    def n(self):
        return self.Qplus.shape[0]


@dataclass(frozen=True, eq=False)
class OutcomePoint:
    """``y0 = f0(x)`` and ``yy = Cx``."""

    y0: float
    yy: np.ndarray

    @property
    def nu(self):
        return nu(self)


def _canonical_sign(v):
    # first nonzero component positive
    for val in v:
        if val != 0.0:
            return v if val > 0 else -v
    return v


def decompose(inst):
    Qs = 0.5 * (inst.Q + inst.Q.T)
    w, V = symmetric_eig(Qs)
    tol = tol_eig(inst.Q)
    neg = np.flatnonzero(w < -tol)
    if neg.size == 0:
        raise AlreadyConvexError("Q has no negative eigenvalue; the problem is a convex QCQP")
    pos = np.flatnonzero(w > tol)
    vecs = np.array([_canonical_sign(V[:, i]) for i in range(len(w))])
    Qplus = np.zeros_like(Qs)
    for i in pos:
        Qplus += w[i] * np.outer(vecs[i], vecs[i])
    Qplus = 0.5 * (Qplus + Qplus.T)
    C = np.array([np.sqrt(-w[i]) * vecs[i] for i in neg])
    for a in (Qplus, C, w):
        a.setflags(write=False)
    return DcDecomposition(int(neg.size), Qplus, C, inst.q, w)


def outcome_map(dc, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (dc.n,):
        raise DimensionError(f"x must have length {dc.n}, got shape {x.shape}")
    return OutcomePoint(float(x @ dc.Qplus @ x + dc.q @ x), dc.C @ x)


def nu(yp):
    yy = np.asarray(yp.yy, dtype=np.float64)
    return float(yp.y0 - yy @ yy)
