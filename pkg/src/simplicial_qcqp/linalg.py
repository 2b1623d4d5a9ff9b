"""Symmetric eigendecomposition on top of the Jacobi kernel."""
import numpy as np

from . import _kernels
from .errors import NumericError

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def symmetric_eig(a):
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of ``a``.

    ``a`` must be symmetric; only its symmetric part is meaningful.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0))
    if not np.all(np.isfinite(a)):
        raise NumericError("matrix has non-finite entries")
    w, v, _, converged = _kernels.jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if not converged:
        raise NumericError("Jacobi eigensolver did not converge")
    order = np.argsort(w, kind="stable")
    return w[order], np.ascontiguousarray(v[:, order])


def max_abs(a):
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0
