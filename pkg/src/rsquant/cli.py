"""Command-line front end.

Exit codes: 0 success (all cases pass), 1 a verification failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from .cartan import CartanDatum, CartanError, cartan_type, format_weight, validate
from .freealg import Element, word_str
from .kashiwara import KashiwaraError, SkewDerivations
from .pairing import BorelError, PairingEngine, determinant
from .parse import ParseError, format_element, parse_element
from .scalars import ScalarError
from .suites import MODES, SUITES, run_suite
from .urs import MAX_HEIGHT_LIMIT, HeightBoundError, UrsAlgebra

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_rows(text: str) -> List[List[int]]:
    try:
        return [[int(x) for x in row.replace(",", " ").split()] for row in text.split(";") if row.strip()]
    except ValueError as exc:
        raise UsageError(f"bad matrix {text!r}: {exc}") from None


def datum_from_args(args) -> CartanDatum:
    if args.matrix:
        sym = None
        if args.symmetrizers:
            sym = [int(x) for x in args.symmetrizers.replace(",", " ").split()]
        datum = validate(_parse_rows(args.matrix), sym)
        if not datum.is_finite_type():
            raise UsageError("only finite-type Cartan matrices are supported")
        return datum
    if args.symmetrizers:
        raise UsageError("--symmetrizers requires --matrix")
    return cartan_type(args.type)


def parse_weight(text: str, rank: int):
    try:
        w = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"bad weight {text!r}; give coordinates like 1,1") from None
    if len(w) != rank:
        raise UsageError(f"weight needs {rank} coordinates")
    return w


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", default="A2", help="Cartan type such as A2, B2, G2 (default A2)")
    p.add_argument("--matrix", help='explicit Cartan matrix, rows separated by ";", e.g. "2 -1; -1 2"')
    p.add_argument("--symmetrizers", help="symmetrizers d_i for --matrix, e.g. 1,1")
    p.add_argument("--max-height", type=int, default=5, help=f"height bound (at most {MAX_HEIGHT_LIMIT})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsquant", description="Exact computations in U_{r,s}(g).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="Cartan datum and Euler form")
    _common(p)

    p = sub.add_parser("dim", help="dimension of a weight space of U^+")
    _common(p)
    p.add_argument("weight", help="coordinates in the simple roots, e.g. 2,1")

    for name, helptext in (("reduce", "canonical form modulo all relations"),
                           ("straighten", "triangular order f * w * w' * e")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        p.add_argument("expr")
        if name == "straighten":
            p.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")

    p = sub.add_parser("pair", help="skew Hopf pairing (y, x)")
    _common(p)
    p.add_argument("y", help="element of the lower Borel part (f and wp letters)")
    p.add_argument("x", help="element of the upper Borel part (e and w letters)")

    p = sub.add_parser("gram", help="Gram matrix of the pairing on a weight space")
    _common(p)
    p.add_argument("weight")

    for name, helptext in (("del", "skew derivation d_i"), ("delp", "skew derivation d'_i")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        p.add_argument("i", type=int)
        p.add_argument("expr")

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--mode", choices=MODES, default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--case", choices=("I", "II", "both"), default="both")
    p.add_argument("--out", help="write the JSON report to this file")
    p.add_argument("--timings", action="store_true", help="include wall times in the JSON report")
    return parser


def _element(alg: UrsAlgebra, text: str) -> Element:
    return parse_element(text, alg.rank)


def _cmd_info(args, alg: UrsAlgebra, out) -> int:
    d = alg.datum
    print(d.describe(), file=out)
    print(f"finite type: {d.is_finite_type()}", file=out)
    print("Euler form <i,j>:", file=out)
    for i in d.nodes:
        print("  " + " ".join(f"{d.euler_basis(i, j):3d}" for j in d.nodes), file=out)
    print(f"defining relations: {len(alg.relations())}", file=out)
    return EXIT_OK


def _cmd_dim(args, alg, out) -> int:
    beta = parse_weight(args.weight, alg.rank)
    ctx = alg.serre_context(args.max_height)
    print(ctx.dim_plus(beta), file=out)
    return EXIT_OK


def _cmd_gram(args, alg, out) -> int:
    beta = parse_weight(args.weight, alg.rank)
    ctx = alg.serre_context(args.max_height)
    rows, cols, M = PairingEngine(alg).gram(beta, ctx)
    print(f"weight {format_weight(beta)}; columns: {', '.join(word_str(c) for c in cols)}", file=out)
    cells = [[str(v) for v in row] for row in M]
    width = max((len(c) for row in cells for c in row), default=1)
    label = max((len(word_str(r)) for r in rows), default=1)
    for r, row in zip(rows, cells):
        print(f"  {word_str(r):>{label}} | " + "  ".join(c.rjust(width) for c in row), file=out)
    print(f"determinant: {determinant(M)}", file=out)
    return EXIT_OK


def _cmd_verify(args, datum: CartanDatum, out) -> int:
    report = run_suite(args.suite, datum, args.max_height, args.mode, args.seed, args.case)
    print(report.to_text(), file=out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(include_time=args.timings) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.max_height > MAX_HEIGHT_LIMIT:
            raise HeightBoundError(f"height bound exceeds maximum {MAX_HEIGHT_LIMIT}")
        datum = datum_from_args(args)
        if args.command == "verify":
            return _cmd_verify(args, datum, out)
        alg = UrsAlgebra(datum)
        if args.command == "info":
            return _cmd_info(args, alg, out)
        if args.command == "dim":
            return _cmd_dim(args, alg, out)
        if args.command == "gram":
            return _cmd_gram(args, alg, out)
        if args.command == "straighten":
            print(format_element(alg.straighten(_element(alg, args.expr), args.strategy)), file=out)
        elif args.command == "reduce":
            ctx = alg.serre_context(args.max_height)
            print(format_element(alg.canonical(_element(alg, args.expr), ctx)), file=out)
        elif args.command == "pair":
            print(PairingEngine(alg).pair(_element(alg, args.y), _element(alg, args.x)), file=out)
        elif args.command in ("del", "delp"):
            ops = SkewDerivations(alg)
            fn = ops.d if args.command == "del" else ops.dp
            print(format_element(fn(args.i, _element(alg, args.expr))), file=out)
        return EXIT_OK
    except (UsageError, CartanError, ParseError, HeightBoundError, BorelError, KashiwaraError,
            ScalarError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
