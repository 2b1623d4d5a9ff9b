"""Numeric inner loops: Jacobi eigensolver, log-barrier Newton, simplex pivoting,
lattice scan.

Everything here takes and returns plain float64/int64 arrays so that the same
source compiles under ``numba.njit`` or runs as ordinary numpy (see
``_backend``).  No Python objects cross this boundary.
"""
import numpy as np

from ._backend import BACKEND, jit

# barrier_solve status codes
BARRIER_OK = 0
BARRIER_UNBOUNDED = 1
BARRIER_NUMERIC = 2

# simplex_run status codes
SIMPLEX_OPTIMAL = 0
SIMPLEX_UNBOUNDED = 1
SIMPLEX_ITER_LIMIT = 2


# ---------------------------------------------------------------------------
# symmetric eigendecomposition
# ---------------------------------------------------------------------------

@jit
def jacobi_eigh(a, tol, max_sweeps):
    """Cyclic Jacobi on a symmetric matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps, converged)``; eigenvectors
    are columns, order is whatever the rotations leave on the diagonal.
    Converged means off-diagonal Frobenius norm <= tol * ||a||_F.
    """
    n = a.shape[0]
    A = a.copy()
    V = np.eye(n)
    scale = np.sqrt(np.sum(A * A))
    converged = False
    sweeps = 0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += A[i, j] * A[i, j]
        if np.sqrt(off) <= tol * scale:
            converged = True
            break
        if sweep == max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
                A[p, q] = 0.0
                A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    w = np.empty(n)
    for i in range(n):
        w[i] = A[i, i]
    return w, V, sweeps, converged


# ---------------------------------------------------------------------------
# log-barrier interior point for  min z'Pz + c'z  s.t.  Gz <= h,
#                                  z'Q_k z + q_k'z <= d_k
# ---------------------------------------------------------------------------

@jit
def _slacks(z, G, h, Qk, qk, dk):
    sl = h - G @ z
    K = dk.shape[0]
    sq = np.empty(K)
    for k in range(K):
        sq[k] = dk[k] - z @ (Qk[k] @ z) - qk[k] @ z
    return sl, sq


@jit
def _barrier_value(z, t, P, c, G, h, Qk, qk, dk):
    sl, sq = _slacks(z, G, h, Qk, qk, dk)
    for i in range(sl.shape[0]):
        if not sl[i] > 0.0:
            return np.inf
    for k in range(sq.shape[0]):
        if not sq[k] > 0.0:
            return np.inf
    return t * (z @ (P @ z) + c @ z) - np.sum(np.log(sl)) - np.sum(np.log(sq))


@jit
def barrier_solve(P, c, GT, G, h, Qk, qk, dk, z0, t0, growth, gap_tol,
                  newton_tol, max_newton, unbounded_floor):
    """Primal log-barrier Newton method with Armijo backtracking.

    ``z0`` must be strictly feasible.  ``GT`` is ``G.T`` made contiguous.
    Returns ``(z, status, t, newton_steps, decrement_sq)``.
    """
    n = z0.shape[0]
    K = dk.shape[0]
    ncons = G.shape[0] + K
    z = z0.copy()
    t = t0
    steps = 0
    dec2 = 0.0
    alpha = 1e-4
    while True:
        for it in range(max_newton):
            sl, sq = _slacks(z, G, h, Qk, qk, dk)
            inv = 1.0 / sl
            grad = t * (2.0 * (P @ z) + c) + GT @ inv
            H = 2.0 * t * P + (GT * (inv * inv)) @ G
            for k in range(K):
                gk = 2.0 * (Qk[k] @ z) + qk[k]
                grad += gk / sq[k]
                H += np.outer(gk, gk) / (sq[k] * sq[k]) + 2.0 * Qk[k] / sq[k]
            dz = np.linalg.solve(H, -grad)
            dec2 = -(grad @ dz)
            if not np.isfinite(dec2):
                return z, BARRIER_NUMERIC, t, steps, dec2
            if dec2 <= 2.0 * newton_tol:
                break
            f_cur = _barrier_value(z, t, P, c, G, h, Qk, qk, dk)
            slack = 8.0 * 2.2e-16 * abs(f_cur)
            step = 1.0
            accepted = False
            while step > 1e-14:
                zn = z + step * dz
                f_new = _barrier_value(zn, t, P, c, G, h, Qk, qk, dk)
                if f_new <= f_cur - alpha * step * dec2 + slack:
                    accepted = True
                    break
                step *= 0.5
            if not accepted:
                # no representable progress at this t: treat as centred
                break
            z = zn
            steps += 1
            obj = z @ (P @ z) + c @ z
            if obj < unbounded_floor:
                return z, BARRIER_UNBOUNDED, t, steps, dec2
            zmax = 0.0
            for i in range(n):
                if abs(z[i]) > zmax:
                    zmax = abs(z[i])
            if zmax > 1e15:
                return z, BARRIER_UNBOUNDED, t, steps, dec2
        if ncons / t <= gap_tol:
            break
        t *= growth
    return z, BARRIER_OK, t, steps, dec2


# ---------------------------------------------------------------------------
# dense tableau simplex (minimisation, reduced costs in the last row)
# ---------------------------------------------------------------------------

@jit
def _pivot(T, basis, row, col):
    T[row, :] = T[row, :] / T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row, :])
    T[:, col] = 0.0
    T[row, col] = 1.0
    basis[row] = col


@jit
def simplex_run(T, basis, ncols, tol, degenerate_limit, max_pivots):
    """Primal simplex on tableau ``T`` over the first ``ncols`` columns.

    Layout: rows ``0..m-1`` hold ``[A | b]`` with ``b >= 0`` and ``basis[i]``
    the basic column of row ``i``; the last row holds reduced costs and
    ``-objective`` in its final entry.  Dantzig pricing until
    ``degenerate_limit`` consecutive degenerate pivots, then Bland's rule for
    the rest of the run.  Returns ``(status, pivots, used_bland)``.
    """
    m = T.shape[0] - 1
    rhs = T.shape[1] - 1
    bland = False
    degenerate_run = 0
    pivots = 0
    while True:
        col = -1
        best = -tol
        for j in range(ncols):
            rc = T[m, j]
            if rc < -tol:
                if bland:
                    col = j
                    break
                if rc < best:
                    best = rc
                    col = j
        if col < 0:
            return SIMPLEX_OPTIMAL, pivots, bland
        if pivots >= max_pivots:
            return SIMPLEX_ITER_LIMIT, pivots, bland
        row = -1
        ratio = np.inf
        for i in range(m):
            a = T[i, col]
            if a > tol:
                r = T[i, rhs] / a
                if r < ratio - 1e-12 or (abs(r - ratio) <= 1e-12 and row >= 0
                                         and basis[i] < basis[row]):
                    ratio = r
                    row = i
        if row < 0:
            return SIMPLEX_UNBOUNDED, pivots, bland
        if ratio <= tol:
            degenerate_run += 1
            if degenerate_run >= degenerate_limit:
                bland = True
        else:
            degenerate_run = 0
        _pivot(T, basis, row, col)
        for i in range(m):
            if T[i, rhs] < 0.0 and T[i, rhs] > -tol:
                T[i, rhs] = 0.0
        pivots += 1


@jit
def simplex_pivot(T, basis, row, col):
    _pivot(T, basis, row, col)


# ---------------------------------------------------------------------------
# lattice scan for the brute-force oracle
# ---------------------------------------------------------------------------

@jit
def _grid_scan_loops(Q, q, A, b, Qk, qk, dk, lo, counts, h, feas_tol):
    n = lo.shape[0]
    total = 1
    for i in range(n):
        total *= counts[i]
    best = np.inf
    best_idx = -1
    x = np.empty(n)
    m = b.shape[0]
    K = dk.shape[0]
    for flat in range(total):
        rem = flat
        for i in range(n - 1, -1, -1):
            x[i] = lo[i] + h * (rem % counts[i])
            rem //= counts[i]
        ok = True
        for r in range(m):
            s = -b[r]
            for j in range(n):
                s += A[r, j] * x[j]
            if s > feas_tol:
                ok = False
                break
        if not ok:
            continue
        for k in range(K):
            s = -dk[k]
            for i in range(n):
                s += qk[k, i] * x[i]
                acc = 0.0
                for j in range(n):
                    acc += Qk[k, i, j] * x[j]
                s += x[i] * acc
            if s > feas_tol:
                ok = False
                break
        if not ok:
            continue
        val = 0.0
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += Q[i, j] * x[j]
            val += x[i] * acc + q[i] * x[i]
        if val < best:
            best = val
            best_idx = flat
    return best, best_idx


def _grid_scan_numpy(Q, q, A, b, Qk, qk, dk, lo, counts, h, feas_tol,
                     chunk=1 << 18):
    n = lo.shape[0]
    total = int(np.prod(counts))
    best = np.inf
    best_idx = -1
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total), dtype=np.int64)
        idx = np.stack(np.unravel_index(flat, tuple(int(c) for c in counts)), axis=1)
        X = lo + h * idx
        ok = np.all(X @ A.T - b <= feas_tol, axis=1)
        for k in range(dk.shape[0]):
            quad = np.einsum("ij,jk,ik->i", X, Qk[k], X) + X @ qk[k] - dk[k]
            ok &= quad <= feas_tol
        if not ok.any():
            continue
        vals = np.einsum("ij,jk,ik->i", X, Q, X) + X @ q
        vals = np.where(ok, vals, np.inf)
        i = int(np.argmin(vals))
        if vals[i] < best:
            best = float(vals[i])
            best_idx = int(flat[i])
    return best, best_idx


grid_scan = _grid_scan_loops if BACKEND == "numba" else _grid_scan_numpy
