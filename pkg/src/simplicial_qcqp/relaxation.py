"""Linear lower bound of ``nu`` over one simplex.

Over ``S`` the concave part ``g(yy) = -||yy||^2`` is replaced by its affine
interpolant through the vertices, and the outcome set by the supporting
half-spaces ``y0 - 2 v_j'yy >= mu_j`` of the vertices.  Substituting
``yy = sum_s w_s v_s`` leaves an LP in ``(y0, w)`` only.
"""
from typing import NamedTuple

import numpy as np

from .errors import DegenerateSimplexError, NumericError
from .geometry import barycentric_to_point, is_degenerate
from .lp import DenseLp, solve_lp


class LowerBound(NamedTuple):
    lb: float
    y0: float = np.nan
    w: np.ndarray = None
    yy: np.ndarray = None


def envelope_values(S):
    v = S.vertices
    return 0.0 - np.einsum("ij,ij->i", v, v)


def build_lp(S, mu):
    mu = np.asarray(mu, dtype=np.float64)
    k = S.r + 1
    if mu.shape != (k,):
        raise ValueError(f"need {k} support values, got shape {mu.shape}")
    if is_degenerate(S):
        raise DegenerateSimplexError("simplex is degenerate; its lower bound is +inf")
    v = S.vertices
    gram = v @ v.T
    rows = tuple((np.concatenate([[1.0], -2.0 * gram[j]]), float(mu[j])) for j in range(k))
    eq = ((np.concatenate([[0.0], np.ones(k)]), 1.0),)
    lower = np.concatenate([[-np.inf], np.zeros(k)])
    return DenseLp(k + 1, np.concatenate([[1.0], envelope_values(S)]), rows, eq, lower)


def lower_bound(S, mu):
    """``LowerBound(lb, y0, w, yy)``; ``lb = +inf`` for a degenerate simplex."""
    if is_degenerate(S):
        return LowerBound(np.inf)
    sol = solve_lp(build_lp(S, mu))
    if sol.status != "optimal":
        raise NumericError(f"relaxation LP returned {sol.status}")
    w = np.clip(sol.z[1:], 0.0, None)
    w /= w.sum()
    return LowerBound(sol.value, float(sol.z[0]), w, barycentric_to_point(S, w))
