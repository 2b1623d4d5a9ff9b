"""JSON instance/report files and a seeded random-instance generator."""
import json
import math

import numpy as np

from .errors import ParseError, ValidationError
from .instance import QcqpInstance, QuadConstraint, validate_instance

INSTANCE_KEYS = ("n", "m", "p", "Q", "q", "A", "b", "quad_constraints")


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{path}: expected number", path=path)
    return float(value)


def _vector(value, length, path):
    if not isinstance(value, list):
        raise ParseError(f"{path}: expected array", path=path)
    if len(value) != length:
        raise ParseError(f"{path}: expected {length} entries, got {len(value)}", path=path)
    return [_number(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _matrix(value, rows, cols, path):
    if not isinstance(value, list):
        raise ParseError(f"{path}: expected array", path=path)
    if len(value) != rows:
        raise ParseError(f"{path}: expected {rows} rows, got {len(value)}", path=path)
    return [_vector(row, cols, f"{path}[{i}]") for i, row in enumerate(value)]


def _count(obj, key):
    if key not in obj:
        raise ParseError(f"{key}: missing", path=key)
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ParseError(f"{key}: expected nonnegative integer", path=key)
    return v


def parse_instance(text, validate=True):
    """Parse an instance file.  Raises :class:`ParseError` (with a JSON path or
    byte offset) or :class:`ValidationError`."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"invalid UTF-8 at byte {exc.start}", offset=exc.start) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[:exc.pos].encode("utf-8"))
        raise ParseError(f"invalid JSON at byte {offset}: {exc.msg}", offset=offset) from None
    if not isinstance(obj, dict):
        raise ParseError("top level: expected object", path="")
    n, m, p = (_count(obj, k) for k in ("n", "m", "p"))
    if n == 0:
        raise ParseError("n: must be positive", path="n")
    for key in INSTANCE_KEYS[3:]:
        if key not in obj:
            raise ParseError(f"{key}: missing", path=key)
    Q = _matrix(obj["Q"], n, n, "Q")
    q = _vector(obj["q"], n, "q")
    A = _matrix(obj["A"], m, n, "A")
    b = _vector(obj["b"], m, "b")
    quads = obj["quad_constraints"]
    if not isinstance(quads, list) or len(quads) != p:
        raise ParseError(f"quad_constraints: expected array of {p} entries", path="quad_constraints")
    constraints = []
    for i, c in enumerate(quads):
        path = f"quad_constraints[{i}]"
        if not isinstance(c, dict) or any(k not in c for k in ("Qi", "qi", "di")):
            raise ParseError(f"{path}: expected object with Qi, qi, di", path=path)
        constraints.append(QuadConstraint(
            _matrix(c["Qi"], n, n, path + ".Qi"),
            _vector(c["qi"], n, path + ".qi"),
            _number(c["di"], path + ".di"),
        ))
    inst = QcqpInstance(np.array(Q), np.array(q), np.array(A).reshape(m, n), np.array(b),
                        tuple(constraints))
    if validate:
        report = validate_instance(inst)
        if not report.valid:
            codes = ", ".join(v.code for v in report.violations)
            raise ValidationError(f"invalid instance ({codes})", report.violations)
    return inst


def instance_to_dict(inst):
    return {
        "n": inst.n,
        "m": inst.m,
        "p": inst.p,
        "Q": inst.Q.tolist(),
        "q": inst.q.tolist(),
        "A": inst.A.tolist(),
        "b": inst.b.tolist(),
        "quad_constraints": [
            {"Qi": c.Q.tolist(), "qi": c.q.tolist(), "di": c.d}
            for c in inst.quad_constraints
        ],
    }


def emit_instance(inst):
    # json writes floats with repr(): shortest round-trip decimal
    return json.dumps(instance_to_dict(inst), indent=1) + "\n"


def _finite_or_none(v):
    return float(v) if v is not None and math.isfinite(v) else None


def report_to_dict(report, trace=False):
    has_point = report.x_star is not None
    d = {
        "status": report.status.value,
        "value": _finite_or_none(report.ub) if has_point else None,
        "x": report.x_star.tolist() if has_point else None,
        "y0": float(report.y_star.y0) if has_point else None,
        "yy": report.y_star.yy.tolist() if has_point else None,
        "lower_bound": _finite_or_none(report.lb),
        "upper_bound": _finite_or_none(report.ub),
        "gap": _finite_or_none(report.gap),
        "epsilon": report.epsilon,
        "iterations": report.iterations,
        "cp_solves": report.cp_solves,
        "lp_solves": report.lp_solves,
        "wall_time_seconds": report.wall_time_seconds,
    }
    if trace:
        d["trace"] = [
            {"iter": e["iter"], "lb": _finite_or_none(e["lb"]), "ub": _finite_or_none(e["ub"]),
             "node_diameter": e["node_diameter"]}
            for e in report.node_log
        ]
    return d


def emit_report(report, trace=False):
    return json.dumps(report_to_dict(report, trace), indent=1) + "\n"


def generate_instance(n, r, p, seed, extra_rows=2):
    """Random instance with exactly ``r`` negative eigenvalues in ``Q``.

    The feasible set is the unit box cut by ``extra_rows`` random halfspaces
    and ``p`` random convex quadratic constraints, all strictly satisfied at
    a known centre point, so it is bounded and has a Slater point.
    """
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    rng = np.random.default_rng(seed)
    basis, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eig = np.concatenate([-rng.uniform(0.5, 3.0, r), rng.uniform(0.5, 3.0, n - r)])
    Q = basis @ np.diag(eig) @ basis.T
    Q = 0.5 * (Q + Q.T)
    q = rng.uniform(-1.0, 1.0, n)

    centre = rng.uniform(0.3, 0.7, n)
    rows = rng.standard_normal((extra_rows, n))
    offsets = rows @ centre + rng.uniform(0.1, 0.5, extra_rows)
    A = np.vstack([np.eye(n), rows])
    b = np.concatenate([np.ones(n), offsets])

    quads = []
    for _ in range(p):
        B = rng.standard_normal((n, n)) / np.sqrt(n)
        Qi = B.T @ B
        Qi = 0.5 * (Qi + Qi.T)
        qi = rng.uniform(-0.5, 0.5, n)
        di = centre @ Qi @ centre + qi @ centre + rng.uniform(0.05, 0.3)
        quads.append(QuadConstraint(Qi, qi, di))
    return QcqpInstance(Q, q, A, b, tuple(quads))
