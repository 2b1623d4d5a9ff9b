import json
import os
import subprocess
import sys

import pytest

from simplicial_qcqp import BACKEND

SCRIPT = r"""
import json, sys
import numpy as np
from simplicial_qcqp import BACKEND, SolverParams, generate_instance, grid_search, solve
from simplicial_qcqp.linalg import symmetric_eig
out = {"backend": BACKEND, "runs": []}
for n, r, p, seed in [(2, 1, 1, 1), (3, 2, 0, 2), (3, 3, 2, 3)]:
    inst = generate_instance(n, r, p, seed)
    rep = solve(inst, SolverParams(1e-4))
    out["runs"].append({"status": rep.status.value, "value": rep.value, "lb": rep.lb,
                        "grid": grid_search(inst, 0.05).value,
                        "eig": symmetric_eig(inst.Q)[0].tolist()})
print(json.dumps(out))
"""


def run_with(backend):
    env = dict(os.environ, SIMPLICIAL_QCQP_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True,
                          text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_default_backend_is_numba():
    if "SIMPLICIAL_QCQP_BACKEND" not in os.environ:
        assert BACKEND == "numba"


@pytest.mark.slow
def test_backends_agree():
    fast, slow = run_with("numba"), run_with("numpy")
    assert (fast["backend"], slow["backend"]) == ("numba", "numpy")
    for a, b in zip(fast["runs"], slow["runs"]):
        assert a["status"] == b["status"] == "eps_optimal"
        assert a["value"] == pytest.approx(b["value"], abs=1e-8)
        assert a["lb"] == pytest.approx(b["lb"], abs=1e-4)
        assert a["grid"] == b["grid"]
        assert a["eig"] == pytest.approx(b["eig"], abs=1e-12)


def test_unknown_backend_rejected():
    env = dict(os.environ, SIMPLICIAL_QCQP_BACKEND="fortran")
    proc = subprocess.run([sys.executable, "-c", "import simplicial_qcqp"], env=env,
                          capture_output=True, text=True)
    assert proc.returncode != 0 and "SIMPLICIAL_QCQP_BACKEND" in proc.stderr
