"""``cubelat`` command line: verify, bench, dihedral, gates.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench as bench_mod
from . import gates as gates_mod
from . import hilbert_embed as he
from .errors import CapExceeded, CubelatError
from .suites import SUITE_NAMES, format_text, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _n_list(text: str) -> list[int]:
    try:
        return [_positive(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad n list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cubelat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITE_NAMES, default="all")
    v.add_argument("--n", type=_positive, default=2)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--timings", action="store_true", help="add runtime_ms per entry (breaks byte identity)")

    b = sub.add_parser("bench", help="compact vs dense representation timings")
    b.add_argument("--n", type=_n_list, default=[4, 8, 64, 100000])
    b.add_argument("--iters", type=_positive, default=10_000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=_positive, default=bench_mod.REPEATS)

    d = sub.add_parser("dihedral", help="closure of <U_delta, exp(2 pi i theta s)>")
    d.add_argument("--theta", required=True, help="p/q or a float")
    d.add_argument("--cap", type=_positive, default=1000)

    g = sub.add_parser("gates", help="dump gate matrices as JSON")
    g.add_argument("--n", type=_positive, default=1)
    g.add_argument("--emit", required=True,
                   help="pauli | matrix-units | hadamard | universal | rotations:THETA")
    g.add_argument("--index", type=_positive, default=1)
    return parser


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, args.n, args.seed, timings=args.timings)
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(format_text(report))
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def _cmd_bench(args) -> int:
    reports = bench_mod.run_bench(args.n, args.iters, args.seed, repeats=args.repeats)
    speedups = {str(n): bench_mod.speedup(reports, n) for n in args.n}
    print(json.dumps({"schema": 1, "runs": [r.to_dict() for r in reports],
                      "compose_speedup": speedups}, indent=2))
    return EXIT_OK


def _cmd_dihedral(args) -> int:
    try:
        theta = gates_mod.parse_theta(args.theta)
    except ValueError:
        print(f"cubelat dihedral: bad theta {args.theta!r}", file=sys.stderr)
        return EXIT_USAGE
    res = gates_mod.dihedral_closure(theta, args.cap)
    out = {k: res.to_dict()[k] for k in ("theta", "closed", "order", "degenerate", "elements_found")}
    print(json.dumps(out))
    return EXIT_OK


def _emit(n: int, which: str, index: int) -> dict:
    if which == "pauli":
        (r, s, t), report = he.cartesian_triple(n, index)
        if not report.passed:
            raise CubelatError("Cartesian triple failed its own checks")
        return {"U_delta": r.to_json_dict(), "s": s.to_json_dict(), "i U_delta s": t.to_json_dict()}
    if which == "matrix-units":
        names = ("e11", "e12", "e21", "e22")
        return dict(zip(names, (u.to_json_dict() for u in he.matrix_units(n, index))))
    if which == "hadamard":
        return {"H": he.hadamard_all(n).to_json_dict()}
    if which == "universal":
        return {name: g.to_json_dict() for name, g in gates_mod.universal_gate_set(n).items()}
    if which.startswith("rotations:"):
        theta = float(gates_mod.parse_theta(which.split(":", 1)[1]))
        out = {f"R{a}": gates_mod.rotation(a, theta).operator().to_json_dict() for a in "xyz"}
        out["exp(2 pi i theta s)"] = gates_mod.rotation_multi([theta] * n, n).to_json_dict()
        return out
    raise ValueError(f"unknown --emit value {which!r}")


def _cmd_gates(args) -> int:
    if args.index > args.n:
        print(f"cubelat gates: --index {args.index} exceeds --n {args.n}", file=sys.stderr)
        return EXIT_USAGE
    try:
        out = _emit(args.n, args.emit, args.index)
    except ValueError as exc:
        print(f"cubelat gates: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps({"n": args.n, "emit": args.emit, "matrices": out}, indent=2))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"verify": _cmd_verify, "bench": _cmd_bench,
               "dihedral": _cmd_dihedral, "gates": _cmd_gates}[args.command]
    try:
        return handler(args)
    except CapExceeded as exc:
        print(f"cubelat {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
