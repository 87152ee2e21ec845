"""Command-line front end.

Exit codes: 0 pass/success, 1 negative verdict, 2 usage or parse error,
3 numeric failure, 4 classification discrepancy.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import gen
from .commute import is_doubly_commuting_tuple
from .errors import DegenerateSample, MatrixError
from .fileio import (
    ParseError,
    dumps,
    matrix_to_doc,
    read_matrix,
    read_tuple,
    tuple_to_doc,
    write_doc,
)
from .laws import PowerSpec, classify_tuple, commuting_normals_theorem, reverse_order_law
from .matcore import DEFAULT_TOL, POWER_TOL, ToleranceConfig
from .pinv import moore_penrose, verify_penrose
from .report import VerdictReport

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_DISCREPANCY = 4

GEN_KINDS = ("unitary", "fixed-rank", "tensor-dc", "commuting-normals", "witness")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tolerance(args, base: ToleranceConfig) -> ToleranceConfig:
    try:
        return base.replace(rank_rel=args.tol_rank, eq_rel=args.tol_eq, eq_abs=args.tol_abs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _fmt(x: float) -> str:
    return f"{x:.3e}"


def _print_checks(report: VerdictReport, out, indent: str = "") -> None:
    for c in report.checks:
        status = "ok" if c.passed else "FAIL"
        print(f"{indent}{c.label}: residual={_fmt(c.residual)} threshold={_fmt(c.threshold)} {status}", file=out)


def _write_report(args, doc) -> None:
    if args.report:
        write_doc(args.report, doc)


def cmd_pinv(args, out) -> int:
    tol = _tolerance(args, DEFAULT_TOL)
    a = read_matrix(args.input)
    ad = moore_penrose(a, tol)
    rep = verify_penrose(a, ad, tol)
    write_doc(args.output, matrix_to_doc(ad))
    for k, r in enumerate(rep.residuals, start=1):
        print(f"r{k}: {_fmt(r)}", file=out)
    print(f"penrose: {'pass' if rep.passed else 'fail'}", file=out)
    _write_report(args, {"command": "pinv", "penrose": rep.to_dict()})
    return EXIT_PASS if rep.passed else EXIT_NUMERIC


def cmd_check(args, out) -> int:
    tol = _tolerance(args, DEFAULT_TOL)
    t, _ = read_tuple(args.input)
    rep = is_doubly_commuting_tuple(t, tol)
    _print_checks(rep, out)
    print(f"doubly commuting: {'yes' if rep.passed else 'no'}", file=out)
    if rep.witness:
        print(f"witness: {rep.witness[0]} {rep.witness[1]}", file=out)
    _write_report(args, {"command": "check", "report": rep.to_dict()})
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_verify_rol(args, out) -> int:
    tol = _tolerance(args, DEFAULT_TOL)
    t, _ = read_tuple(args.input)
    rep = reverse_order_law(t, tol)
    _print_checks(rep, out)
    print(f"reverse order law: {'pass' if rep.passed else 'fail'}", file=out)
    _write_report(args, {"command": "verify-rol", "report": rep.to_dict()})
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_classify(args, out) -> int:
    tol = _tolerance(args, DEFAULT_TOL)
    t, _ = read_tuple(args.input)
    if len(t) < 2:
        raise UsageError("classify needs a tuple with at least two entries")
    result = classify_tuple(t, tol)
    print("evidence:", file=out)
    _print_checks(result.evidence, out, "  ")
    print("cross check:", file=out)
    _print_checks(result.cross_check, out, "  ")
    print(f"verdict: {result.verdict.value}", file=out)
    if result.discrepancy:
        print("discrepancy: pseudoinverse evidence and direct check disagree", file=out)
    _write_report(args, {"command": "classify", "result": result.to_dict()})
    if result.discrepancy:
        return EXIT_DISCREPANCY
    return EXIT_PASS if result.evidence.passed else EXIT_FAIL


def cmd_powers(args, out) -> int:
    tol = _tolerance(args, POWER_TOL)
    t, powers = read_tuple(args.input)
    if powers is None:
        raise UsageError("powers needs a tuple file with an 'exponents' array")
    rep = commuting_normals_theorem(t, powers, tol)
    for warning in rep.notes["warnings"]:
        print(f"warning: premise not met: {warning}", file=out)
    for name, stage in rep.parts.items():
        print(f"stage {name}: {'pass' if stage.passed else 'fail'}", file=out)
        _print_checks(stage, out, "  ")
    print(f"powers: {'pass' if rep.passed else 'fail'}", file=out)
    _write_report(args, {"command": "powers", "report": rep.to_dict()})
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _ints(params: Sequence[str], count: int | None, kind: str) -> list[int]:
    try:
        values = [int(p) for p in params]
    except ValueError as exc:
        raise UsageError(f"gen {kind}: parameters must be integers") from exc
    if count is not None and len(values) != count:
        raise UsageError(f"gen {kind}: expected {count} parameters, got {len(values)}")
    return values


def cmd_gen(args, out) -> int:
    kind, seed = args.kind, args.seed
    try:
        if kind == "unitary":
            (dim,) = _ints(args.params, 1, kind)
            doc = matrix_to_doc(gen.random_unitary(dim, seed))
        elif kind == "fixed-rank":
            rows, cols, rank = _ints(args.params, 3, kind)
            doc = matrix_to_doc(gen.random_fixed_rank(rows, cols, rank, seed))
        else:
            if kind == "tensor-dc":
                dims = _ints(args.params, None, kind)
                t = gen.tensor_dc(dims, seed)
            elif kind == "commuting-normals":
                dim, count = _ints(args.params, 2, kind)
                radii = tuple(args.radii) if args.radii else gen.SIGMA_RANGE
                t = gen.commuting_normals(dim, count, seed, radii=radii)
            else:
                params = _ints(args.params, None, kind) or [2]
                if len(params) != 1:
                    raise UsageError("gen witness: expected at most one parameter")
                t = gen.noncommuting_witness(params[0])
            powers = PowerSpec(tuple(args.exponents)) if args.exponents is not None else None
            if powers is not None and len(powers) != len(t):
                raise UsageError(f"gen {kind}: {len(powers)} exponents for {len(t)} entries")
            doc = tuple_to_doc(t, powers)
    except (ValueError, MatrixError) as exc:
        if isinstance(exc, DegenerateSample):
            raise
        raise UsageError(f"gen {kind}: {exc}") from exc
    if args.output:
        write_doc(args.output, doc)
    else:
        out.write(dumps(doc))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol-rank", type=float, help="relative singular-value cutoff")
    common.add_argument("--tol-eq", type=float, help="relative equality tolerance")
    common.add_argument("--tol-abs", type=float, help="absolute equality floor")
    common.add_argument("--report", metavar="PATH", help="also write a JSON report to PATH")

    parser = _Parser(prog="mpcommute", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pinv", parents=[common], help="Moore-Penrose inverse of a MatrixFile")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_pinv)

    for name, func, text in [
        ("check", cmd_check, "is the tuple doubly commuting?"),
        ("verify-rol", cmd_verify_rol, "reverse order law for the tuple product"),
        ("classify", cmd_classify, "classify from pseudoinverses of swapped products"),
        ("powers", cmd_powers, "product-of-powers law for commuting normals"),
    ]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("input")
        p.set_defaults(func=func)

    p = sub.add_parser("gen", parents=[common], help="generate a matrix or tuple file")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exponents", type=int, nargs="+")
    p.add_argument("--radii", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MatrixError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
