"""r-simplices in the outcome space of ``yy = Cx``."""
import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .errors import DegenerateCoverError, WeightsInvalidError

VOLUME_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class Simplex:
    """``r+1`` vertices in ``R^r``, stored as rows of ``vertices``."""

    vertices: np.ndarray
    generation: int = 0

    def __post_init__(self):
        v = np.array(self.vertices, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != v.shape[1] + 1:
            raise ValueError(f"an r-simplex needs r+1 vertices in R^r, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def r(self):
        return self.vertices.shape[1]

    def __repr__(self):
        return f"Simplex({self.vertices.tolist()}, generation={self.generation})"


def initial_simplex(ylo, yhi):
    """Corner simplex covering the box ``prod [ylo_i, yhi_i]``.

    ``v_1 = ylo`` and ``v_{i+1} = ylo + r (yhi_i - ylo_i) e_i``.
    """
    ylo = np.asarray(ylo, dtype=np.float64)
    yhi = np.asarray(yhi, dtype=np.float64)
    if ylo.shape != yhi.shape or ylo.ndim != 1 or ylo.size == 0:
        raise ValueError("ylo and yhi must be non-empty vectors of equal length")
    if np.any(yhi < ylo):
        raise ValueError("need ylo <= yhi componentwise")
    if np.all(yhi == ylo):
        raise DegenerateCoverError("outcome box is a single point")
    r = ylo.size
    verts = np.tile(ylo, (r + 1, 1))
    verts[1:] += np.diag(r * (yhi - ylo))
    return Simplex(verts, 0)


def longest_edge(S):
    """``(i, j, length)`` of a longest edge, 0-based, smallest ``(i, j)`` on ties."""
    v = S.vertices
    best = (-1, -1, -1.0)
    for i in range(len(v) - 1):
        for j in range(i + 1, len(v)):
            d = v[i] - v[j]
            sq = float(d @ d)
            if sq > best[2]:
                best = (i, j, sq)
    return best[0], best[1], float(np.sqrt(best[2]))


def diameter(S):
    return longest_edge(S)[2]


def bisect(S):
    """Split ``S`` at the midpoint ``eta`` of its longest edge ``(i, j)``.

    The first child replaces vertex ``j`` by ``eta``, the second replaces
    vertex ``i``.  Returns ``(S1, S2, eta, (i, j))``.
    """
    i, j, _ = longest_edge(S)
    v = S.vertices
    eta = 0.5 * (v[i] + v[j])
    v1 = v.copy()
    v1[j] = eta
    v2 = v.copy()
    v2[i] = eta
    g = S.generation + 1
    return Simplex(v1, g), Simplex(v2, g), eta, (i, j)


def _bareiss_det(M):
    """Exact determinant of a square integer matrix (lists of Python ints)."""
    M = [row[:] for row in M]
    k = len(M)
    sign, prev = 1, 1
    for c in range(k - 1):
        if M[c][c] == 0:
            swap = next((i for i in range(c + 1, k) if M[i][c] != 0), None)
            if swap is None:
                return 0
            M[c], M[swap] = M[swap], M[c]
            sign = -sign
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                M[i][j] = (M[i][j] * M[c][c] - M[i][c] * M[c][j]) // prev
        prev = M[c][c]
    return sign * M[-1][-1]


def cm_volume(S):
    """r-volume from the Cayley-Menger determinant of squared edge lengths.

    Float coordinates are dyadic rationals, so after scaling to integers the
    determinant is evaluated exactly; the only rounding is the final sqrt.
    Plain float elimination would lose about cond(E)^2 * eps on thin simplices.
    """
    v = S.vertices
    r = S.r
    fr = [[Fraction(float(a)) for a in row] for row in v]
    scale = max(f.denominator for row in fr for f in row)
    iv = [[int(f * scale) for f in row] for row in fr]
    D2 = [[sum((a - b) ** 2 for a, b in zip(p, q)) for q in iv] for p in iv]
    B = [[0] + [1] * (r + 1)] + [[1] + D2[i] for i in range(r + 1)]
    vol2_num = (-1) ** (r + 1) * _bareiss_det(B)
    if vol2_num <= 0:
        return 0.0
    vol2_den = 2 ** r * factorial(r) ** 2 * scale ** (2 * r)
    # sqrt(num/den) without overflowing the float range
    shift = (vol2_num.bit_length() - vol2_den.bit_length()) // 2
    return math.ldexp(math.sqrt((vol2_num << max(0, -2 * shift)) / (vol2_den << max(0, 2 * shift))),
                      shift)


def edge_volume(S):
    """r-volume as ``|det(v_2 - v_1, ..., v_{r+1} - v_1)| / r!``."""
    v = S.vertices
    return float(abs(np.linalg.det(v[1:] - v[0])) / factorial(S.r))


def is_degenerate(S):
    d = diameter(S)
    if d == 0.0:
        return True
    return cm_volume(S) <= VOLUME_RTOL * d ** S.r


def barycentric_to_point(S, w):
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (S.r + 1,):
        raise WeightsInvalidError(f"need {S.r + 1} weights, got shape {w.shape}")
    if np.any(w < -1e-12) or abs(w.sum() - 1.0) > 1e-9:
        raise WeightsInvalidError("weights must be nonnegative and sum to one")
    return w @ S.vertices


def barycentric_coordinates(S, y):
    """Weights ``w`` with ``sum w = 1`` and ``w @ vertices = y`` (non-degenerate ``S``)."""
    v = S.vertices
    M = np.vstack([v.T, np.ones(S.r + 1)])
    rhs = np.append(np.asarray(y, dtype=np.float64), 1.0)
    return np.linalg.solve(M, rhs)


def contains(S, y, tol=1e-9):
    return bool(np.all(barycentric_coordinates(S, y) >= -tol))
