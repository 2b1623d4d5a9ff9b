"""Command-line interface: ``solve``, ``validate``, ``oracle``, ``gen``."""
import argparse
import json
import sys

from .bnb import SolverParams, Status, solve
from .errors import ParseError, QcqpError, ValidationError
from .instance import validate_instance
from .io import emit_instance, emit_report, generate_instance, parse_instance
from .oracle import grid_search, vertex_enumerate_box

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_LIMIT = 2
EXIT_INFEASIBLE = 3
EXIT_USAGE = 64

_STATUS_EXIT = {
    Status.EPS_OPTIMAL: EXIT_OK,
    Status.ITER_LIMIT: EXIT_LIMIT,
    Status.TIME_LIMIT: EXIT_LIMIT,
    Status.INFEASIBLE: EXIT_INFEASIBLE,
    Status.UNBOUNDED_SET: EXIT_INFEASIBLE,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser():
    parser = _Parser(prog="simplicial-qcqp",
                     description="Global solver for non-convex QCQPs with few negative eigenvalues.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    p.add_argument("--epsilon", type=float, default=1e-4)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--output", choices=("json", "text"), default="text")
    p.add_argument("--trace", action="store_true")

    p = sub.add_parser("validate", help="check an instance file")
    p.add_argument("file")

    p = sub.add_parser("oracle", help="brute-force reference minimum (n <= 4)")
    p.add_argument("file")
    p.add_argument("--resolution", type=float, default=0.01)
    p.add_argument("--method", choices=("grid", "vertex"), default="grid")

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default="-")
    return parser


def _read(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _fmt(v):
    return "n/a" if v is None else f"{v:.12g}"


def _text_report(rep):
    lines = [f"status       {rep.status.value}"]
    if rep.x_star is not None:
        lines += [
            f"value        {_fmt(rep.ub)}",
            "x            [" + ", ".join(_fmt(v) for v in rep.x_star) + "]",
            f"lower bound  {_fmt(rep.lb)}",
            f"gap          {_fmt(rep.gap)}  (epsilon {rep.epsilon:g})",
        ]
    lines.append(f"iterations   {rep.iterations}  (convex solves {rep.cp_solves}, LP solves {rep.lp_solves})")
    lines.append(f"time         {rep.wall_time_seconds:.3f} s")
    if rep.message:
        lines.append(f"message      {rep.message}")
    return "\n".join(lines) + "\n"


def _cmd_solve(args, out):
    inst = parse_instance(_read(args.file))
    params = SolverParams(args.epsilon, args.max_iter, args.time_limit)
    rep = solve(inst, params)
    out.write(emit_report(rep, args.trace) if args.output == "json" else _text_report(rep))
    return _STATUS_EXIT.get(rep.status, EXIT_ERROR)


def _cmd_validate(args, out):
    inst = parse_instance(_read(args.file), validate=False)
    report = validate_instance(inst)
    if report.valid:
        out.write(f"valid: n={inst.n} m={inst.m} p={inst.p} r={report.r_detected}\n")
        return EXIT_OK
    out.write("invalid:\n")
    for v in report.violations:
        out.write(f"  {v.code}: {v.message}\n")
    return EXIT_ERROR


def _cmd_oracle(args, out):
    inst = parse_instance(_read(args.file))
    if args.method == "vertex":
        res = vertex_enumerate_box(inst)
    else:
        res = grid_search(inst, args.resolution)
    out.write(json.dumps({
        "method": res.method, "value": res.value, "x": res.x.tolist(),
        "resolution": res.resolution, "tolerance": float(res.tolerance),
        "guarantee": res.guarantee,
    }, indent=1) + "\n")
    return EXIT_OK


def _cmd_gen(args, out):
    try:
        inst = generate_instance(args.n, args.r, args.p, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = emit_instance(inst)
    if args.out == "-":
        out.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


_COMMANDS = {"solve": _cmd_solve, "validate": _cmd_validate,
             "oracle": _cmd_oracle, "gen": _cmd_gen}


def run_cli(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        err.write(f"{exc}\n")
        for v in exc.violations:
            err.write(f"  {v.code}: {v.message}\n")
        return EXIT_ERROR
    except (ParseError, QcqpError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
