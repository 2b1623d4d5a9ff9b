import json
import pathlib

import numpy as np
import pytest

from simplicial_qcqp import QcqpInstance, QuadConstraint

DATA = pathlib.Path(__file__).parent / "data"

_acceptance_lines = []


def box_instance(Q, q=None, p_constraints=()):
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[0]
    return QcqpInstance(Q, np.zeros(n) if q is None else q, np.eye(n), np.ones(n),
                        tuple(p_constraints))


@pytest.fixture
def e1():
    return box_instance(np.diag([1.0, -1.0]))


@pytest.fixture
def e2():
    return box_instance(-np.eye(2))


@pytest.fixture
def e3():
    disc = QuadConstraint(np.eye(2), np.zeros(2), 1.0)
    return box_instance(np.diag([1.0, -1.0]), p_constraints=[disc])


@pytest.fixture(scope="session")
def oracle_cases():
    return json.loads((DATA / "oracle_cases.json").read_text())


@pytest.fixture
def acceptance_line():
    """Record a one-line verdict shown in the terminal summary."""
    def record(criterion, ok, detail):
        _acceptance_lines.append(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
