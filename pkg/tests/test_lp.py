from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from simplicial_qcqp import DenseLp, solve_lp


def leq(a, b):
    """``a'z <= b`` as a ``>=`` row."""
    return (-np.asarray(a, dtype=float), -float(b))


def test_single_lower_bound():
    sol = solve_lp(DenseLp(1, [1.0], [([1.0], 3.0)], var_lower=[-np.inf]))
    assert sol.status == "optimal" and sol.value == pytest.approx(3.0)


def test_upper_bounded_maximisation():
    sol = solve_lp(DenseLp(1, [-1.0], [leq([1.0], 1.0)]))
    assert sol.status == "optimal" and sol.value == -1.0 and sol.z.tolist() == [1.0]


def test_e1_relaxation_lp_by_enumeration():
    # variables (y0, w1, w2): y0 >= 0, y0 - 2 w2 >= -2, w1 + w2 = 1
    lp = DenseLp(3, [1.0, 0.0, -1.0],
                 [([1.0, 0.0, 0.0], 0.0), ([1.0, 0.0, -2.0], -2.0)],
                 [([0.0, 1.0, 1.0], 1.0)], [-np.inf, 0.0, 0.0])
    sol = solve_lp(lp)
    # every basic point: pick 3 of the 5 constraints (2 rows, eq, w >= 0) as active
    rows = np.array([[1, 0, 0], [1, 0, -2], [0, 1, 1], [0, 1, 0], [0, 0, 1]], dtype=float)
    rhs = np.array([0, -2, 1, 0, 0], dtype=float)
    best = np.inf
    for act in combinations(range(5), 3):
        if 2 not in act:
            continue
        M = rows[list(act)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        z = np.linalg.solve(M, rhs[list(act)])
        if np.all(rows[[0, 1, 3, 4]] @ z >= rhs[[0, 1, 3, 4]] - 1e-12):
            best = min(best, lp.objective @ z)
    assert best == -1.0
    assert sol.value == pytest.approx(-1.0, abs=1e-12)
    np.testing.assert_allclose(sol.z, [0.0, 0.0, 1.0], atol=1e-12)


def test_infeasible_and_unbounded():
    infeasible = DenseLp(1, [1.0], [([1.0], 2.0), leq([1.0], 1.0)])
    assert solve_lp(infeasible).status == "infeasible"
    unbounded = DenseLp(1, [-1.0], [([1.0], 0.0)])
    assert solve_lp(unbounded).status == "unbounded"


def test_redundant_equalities():
    lp = DenseLp(2, [1.0, 2.0], (), [([1.0, 1.0], 1.0), ([2.0, 2.0], 2.0)])
    sol = solve_lp(lp)
    assert sol.status == "optimal" and sol.value == pytest.approx(1.0)


def test_beale_cycling_example_terminates():
    c = [-0.75, 20.0, -0.5, 6.0]
    A = [[0.25, -8.0, -1.0, 9.0], [0.5, -12.0, -0.5, 3.0], [0.0, 0.0, 1.0, 0.0]]
    b = [0.0, 0.0, 1.0]
    sol = solve_lp(DenseLp(4, c, [leq(a, beta) for a, beta in zip(A, b)]))
    ref = linprog(c, A_ub=A, b_ub=b, method="highs")
    assert sol.status == "optimal" and sol.value == pytest.approx(ref.fun, abs=1e-9)


def test_deterministic():
    lp = DenseLp(3, [1.0, -1.0, 0.5], [leq([1, 1, 1], 4), ([1, -1, 0], -2)], (),
                 [0.0, -np.inf, 0.0])
    a, b = solve_lp(lp), solve_lp(lp)
    assert np.array_equal(a.z, b.z) and a.pivots == b.pivots


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_matches_highs(seed):
    rng = np.random.default_rng(seed)
    nv = int(rng.integers(1, 6))
    n_ge, n_eq = int(rng.integers(0, 5)), int(rng.integers(0, 3))
    A_ge = rng.integers(-3, 4, (n_ge, nv)).astype(float)
    b_ge = rng.integers(-5, 6, n_ge).astype(float)
    A_eq = rng.integers(-3, 4, (n_eq, nv)).astype(float)
    b_eq = rng.integers(-5, 6, n_eq).astype(float)
    c = rng.integers(-4, 5, nv).astype(float)
    free = rng.random(nv) < 0.3
    lower = np.where(free, -np.inf, rng.integers(-2, 2, nv).astype(float))
    A_ge = np.vstack([A_ge, -np.eye(nv)])
    b_ge = np.concatenate([b_ge, -np.full(nv, 10.0)])
    lp = DenseLp(nv, c, list(zip(A_ge, b_ge)), list(zip(A_eq, b_eq)), lower)
    sol = solve_lp(lp)
    ref = linprog(c, A_ub=-A_ge, b_ub=-b_ge, A_eq=A_eq if n_eq else None,
                  b_eq=b_eq if n_eq else None,
                  bounds=[(None if np.isinf(lo) else lo, None) for lo in lower], method="highs")
    if ref.status == 2:
        assert sol.status == "infeasible"
    elif ref.status == 3:
        assert sol.status == "unbounded"
    else:
        assert ref.status == 0
        assert sol.status == "optimal"
        assert sol.value == pytest.approx(ref.fun, abs=1e-7)
        assert np.all(A_ge @ sol.z >= b_ge - 1e-9)
        assert np.all(sol.z >= lower - 1e-9)
        if n_eq:
            np.testing.assert_allclose(A_eq @ sol.z, b_eq, atol=1e-9)
