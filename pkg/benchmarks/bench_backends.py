"""Time the numba kernels against the pure-numpy fallback.

Each backend runs in its own interpreter because the choice is fixed at
import time.  Compilation is excluded: every kernel is called once before
timing.

    python benchmarks/bench_backends.py [--repeat 5]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from simplicial_qcqp import (BACKEND, SolverParams, decompose, find_interior_point,
                             generate_instance, grid_search, lower_bound, solve, solve_cp)
from simplicial_qcqp.geometry import initial_simplex
from simplicial_qcqp.linalg import symmetric_eig

repeat = int(sys.argv[1])
inst = generate_instance(4, 3, 2, 11)
dc = decompose(inst)
x0 = find_interior_point(inst)
S = initial_simplex(np.zeros(3), np.ones(3))
mu = np.array([solve_cp(dc, inst, v, x0)[0] for v in S.vertices])
M = np.random.default_rng(0).standard_normal((12, 12))
M = M + M.T

cases = {
    "jacobi eig 12x12": lambda: symmetric_eig(M),
    "barrier CP n=4 p=2": lambda: solve_cp(dc, inst, [0.3, -0.2, 0.1], x0),
    "simplex LP r=3": lambda: lower_bound(S, mu),
    "grid oracle n=3 h=0.01": lambda: grid_search(generate_instance(3, 2, 1, 5), 0.01),
    "full solve n=4 r=3": lambda: solve(inst, SolverParams(1e-4)),
}
out = {"backend": BACKEND, "times": {}}
for name, fn in cases.items():
    fn()
    ts = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t0)
    out["times"][name] = sorted(ts)[len(ts) // 2]
print(json.dumps(out))
"""


def run(backend, repeat):
    env = dict(os.environ, SIMPLICIAL_QCQP_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)["times"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast = run("numba", args.repeat)
    slow = run("numpy", args.repeat)
    print(f"{'kernel':28s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name in fast:
        a, b = fast[name], slow[name]
        print(f"{name:28s} {a * 1e3:8.2f}ms {b * 1e3:8.2f}ms {b / a:7.1f}x")


if __name__ == "__main__":
    main()
