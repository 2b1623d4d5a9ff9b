"""QCQP problem data: min x'Qx + q'x  s.t.  Ax <= b, x >= 0, x'Q_i x + q_i'x <= d_i."""
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DimensionError
from .linalg import max_abs, symmetric_eig

TOL_FEAS = 1e-8


def tol_sym(M):
    return 1e-10 * (1.0 + max_abs(M))


def tol_psd(M):
    return 1e-8 * (1.0 + max_abs(M))


def tol_eig(M):
    return 1e-8 * (1.0 + max_abs(M))


def _frozen(a, ndim, name):
    arr = np.array(a, dtype=np.float64)
    if arr.ndim != ndim:
        raise DimensionError(f"{name}: expected {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class QuadConstraint:
    """x'Qx + q'x <= d."""

    Q: np.ndarray
    q: np.ndarray
    d: float

    def __post_init__(self):
        object.__setattr__(self, "Q", _frozen(self.Q, 2, "Qi"))
        object.__setattr__(self, "q", _frozen(self.q, 1, "qi"))
        object.__setattr__(self, "d", float(self.d))


@dataclass(frozen=True, eq=False)
class QcqpInstance:
    Q: np.ndarray
    q: np.ndarray
    A: np.ndarray
    b: np.ndarray
    quad_constraints: tuple = ()

    def __post_init__(self):
        Q = _frozen(self.Q, 2, "Q")
        n = Q.shape[0]
        if Q.shape != (n, n) or n == 0:
            raise DimensionError(f"Q must be a non-empty square matrix, got {Q.shape}")
        q = _frozen(self.q, 1, "q")
        A = np.array(self.A, dtype=np.float64)
        if A.size == 0:
            A = np.zeros((0, n))
        A = _frozen(A, 2, "A")
        b = _frozen(np.asarray(self.b, dtype=np.float64).reshape(-1), 1, "b")
        quads = tuple(
            c if isinstance(c, QuadConstraint) else QuadConstraint(*c)
            for c in self.quad_constraints
        )
        if q.shape != (n,):
            raise DimensionError(f"q must have length {n}, got {q.shape}")
        if A.shape[1] != n or b.shape != (A.shape[0],):
            raise DimensionError(f"A must be m x {n} with b of length m; got A {A.shape}, b {b.shape}")
        for i, c in enumerate(quads):
            if c.Q.shape != (n, n) or c.q.shape != (n,):
                raise DimensionError(f"quad_constraints[{i}] has wrong dimensions")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "quad_constraints", quads)

    @property
    def n(self):
        return self.Q.shape[0]

    @property
    def m(self):
        return self.A.shape[0]

    @property
    def p(self):
        return len(self.quad_constraints)

    def quad_arrays(self):
        """Stacked ``(Qk, qk, dk)`` arrays, shapes ``(p,n,n)``, ``(p,n)``, ``(p,)``."""
        n, p = self.n, self.p
        Qk = np.zeros((p, n, n))
        qk = np.zeros((p, n))
        dk = np.zeros(p)
        for k, c in enumerate(self.quad_constraints):
            Qk[k], qk[k], dk[k] = c.Q, c.q, c.d
        return Qk, qk, dk


class Violation(NamedTuple):
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    r_detected: int
    violations: list = field(default_factory=list)
    boundedness_check: str = "not_verified"


def validate_instance(inst):
    """Structural checks: finiteness, symmetry of Q and Q_i, PSD of Q_i.

    Boundedness is never verified here; it is established by the outcome-bound
    subproblems when solving.
    """
    violations = []
    arrays = [("Q", inst.Q), ("q", inst.q), ("A", inst.A), ("b", inst.b)]
    for i, c in enumerate(inst.quad_constraints):
        arrays += [(f"Q{i}", c.Q), (f"q{i}", c.q), (f"d{i}", np.array([c.d]))]
    bad = [name for name, a in arrays if not np.all(np.isfinite(a))]
    if bad:
        violations.append(Violation("NONFINITE", "non-finite entries in " + ", ".join(bad)))
        return ValidationReport(False, 0, violations)

    asym = max_abs(inst.Q - inst.Q.T)
    if asym > tol_sym(inst.Q):
        violations.append(Violation("Q_NOT_SYMMETRIC", f"max |Q - Q^T| = {asym:.3g}"))
    Qs = 0.5 * (inst.Q + inst.Q.T)
    w, _ = symmetric_eig(Qs)
    r_detected = int(np.sum(w < -tol_eig(Qs)))

    for i, c in enumerate(inst.quad_constraints):
        asym = max_abs(c.Q - c.Q.T)
        if asym > tol_sym(c.Q):
            violations.append(Violation(
                "QI_NOT_SYMMETRIC", f"quad_constraints[{i}]: max |Qi - Qi^T| = {asym:.3g}"))
        Qis = 0.5 * (c.Q + c.Q.T)
        wi, _ = symmetric_eig(Qis)
        if wi[0] < -tol_psd(Qis):
            violations.append(Violation(
                "QI_NOT_PSD", f"quad_constraints[{i}]: smallest eigenvalue {wi[0]:.6g}"))
    return ValidationReport(not violations, r_detected, violations)


def _check_x(inst, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (inst.n,):
        raise DimensionError(f"x must have length {inst.n}, got shape {x.shape}")
    return x


def evaluate_objective(inst, x):
    x = _check_x(inst, x)
    return float(x @ inst.Q @ x + inst.q @ x)


class Residuals(NamedTuple):
    linear: np.ndarray
    bounds: np.ndarray
    quadratic: np.ndarray

    def max(self):
        return float(max((np.max(r) for r in self if r.size), default=-np.inf))

    def feasible(self, tol=TOL_FEAS):
        return self.max() <= tol


def constraint_residuals(inst, x):
    """``(Ax - b, -x, x'Q_i x + q_i'x - d_i)``; x is feasible iff all are <= 0."""
    x = _check_x(inst, x)
    quad = np.array([x @ c.Q @ x + c.q @ x - c.d for c in inst.quad_constraints])
    return Residuals(inst.A @ x - inst.b, -x, quad.reshape(-1))
