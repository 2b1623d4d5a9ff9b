"""Regenerate tests/data/oracle_cases.json.

Runs the brute-force oracles (lattice scan at h = 0.01, or box-vertex
enumeration for concave box instances) on a fixed set of seeded instances and
freezes the results.  A scipy SLSQP refinement started at the lattice
minimiser is stored alongside as a sharper one-sided reference.

    python tools/make_oracle_fixtures.py
"""
import json
import pathlib
import time

import numpy as np
from scipy.optimize import minimize

from simplicial_qcqp.instance import constraint_residuals, evaluate_objective
from simplicial_qcqp.io import generate_instance, instance_to_dict
from simplicial_qcqp.oracle import grid_search, vertex_enumerate_box

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data" / "oracle_cases.json"
RESOLUTION = 0.01

GRID_CASES = [
    (2, 1, 0), (2, 1, 1), (2, 1, 2), (2, 2, 0), (2, 2, 1), (2, 2, 2),
    (3, 1, 0), (3, 1, 2), (3, 2, 0), (3, 2, 1), (3, 2, 2), (3, 3, 0), (3, 3, 1), (3, 3, 2),
    (4, 1, 0), (4, 1, 1), (4, 1, 2), (4, 2, 0), (4, 2, 1), (4, 2, 2),
    (4, 3, 0), (4, 3, 1), (4, 3, 2), (4, 3, 1),
]
VERTEX_CASES = [(2, 2, 0), (2, 2, 0), (3, 3, 0), (3, 3, 0)]


def refine(inst, x0):
    cons = [{"type": "ineq", "fun": lambda x, a=a, b=b: b - a @ x} for a, b in zip(inst.A, inst.b)]
    cons += [{"type": "ineq", "fun": lambda x, c=c: c.d - x @ c.Q @ x - c.q @ x}
             for c in inst.quad_constraints]
    res = minimize(lambda x: evaluate_objective(inst, x), x0, method="SLSQP",
                   jac=lambda x: 2 * inst.Q @ x + inst.q,
                   bounds=[(0, None)] * inst.n, constraints=cons,
                   options={"ftol": 1e-14, "maxiter": 500})
    x = np.maximum(res.x, 0.0)
    if constraint_residuals(inst, x).max() > 1e-9:
        return None
    return evaluate_objective(inst, x)


def main():
    cases = []
    for k, (n, r, p) in enumerate(GRID_CASES):
        seed = 100 + k
        inst = generate_instance(n, r, p, seed)
        t = time.perf_counter()
        res = grid_search(inst, RESOLUTION)
        refined = refine(inst, res.x)
        cases.append({
            "name": f"grid_n{n}_r{r}_p{p}_s{seed}", "n": n, "r": r, "p": p, "seed": seed,
            "method": "grid", "resolution": RESOLUTION, "value": res.value,
            "x": res.x.tolist(), "tolerance": float(res.tolerance),
            "refined_value": None if refined is None else min(refined, res.value),
            "instance": instance_to_dict(inst),
        })
        print(cases[-1]["name"], res.value, refined, f"{time.perf_counter() - t:.1f}s")
    for k, (n, r, p) in enumerate(VERTEX_CASES):
        seed = 500 + k
        inst = generate_instance(n, r, p, seed, extra_rows=0)
        res = vertex_enumerate_box(inst)
        cases.append({
            "name": f"vertex_n{n}_r{r}_s{seed}", "n": n, "r": r, "p": p, "seed": seed,
            "method": "vertex_enum", "resolution": 0.0, "value": res.value,
            "x": res.x.tolist(), "tolerance": 0.0, "refined_value": res.value,
            "instance": instance_to_dict(inst),
        })
        print(cases[-1]["name"], res.value)
    OUT.write_text(json.dumps(cases, indent=1) + "\n")


if __name__ == "__main__":
    main()
