"""Command-line interface; every command prints JSON lines on standard output.

Exit status: 0 on success, 1 for malformed input or usage, 2 when the
mathematics refuses (a pole, a divergent series, engines disagreeing).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence

from . import combinat, series as ser
from .errors import DivergenceError, MethodDisagreement, PoleError
from .euler import (
    ConstructibleFunction, arrangement_decompose, chi_line, dimension, euler_integral,
    euler_measure,
)
from .grammar import SetDocument, parse_document
from .polyset import canonicalize_line
from .symmetry import AffineMap, CharacterTable, builtin_table, character_multiplicities, trace

__all__ = ["main", "run_command", "build_parser", "to_json"]

_DOMAIN_ERRORS = (PoleError, DivergenceError, MethodDisagreement)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1 rather than argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def to_json(value):
    """Exact JSON form: integers stay numbers, other rationals become ``"p/q"``."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, ser.Polynomial):
        return [to_json(c) for c in value.coeffs] or [0]
    if isinstance(value, ser.RationalFunction):
        num, den = value.display_pair()
        return {"numerator": to_json(num), "denominator": to_json(den)}
    if isinstance(value, dict):
        return {k: to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _load(path: str) -> SetDocument:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def _rational_list(text: str) -> List[Fraction]:
    try:
        return [Fraction(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise ValueError(f"not a list of rationals: {text!r}") from None


def _method_tag(method: str) -> str:
    return "fiber+cells" if method == "both" else method


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_chi(a) -> Iterator[Dict]:
    S = _load(a.file)[a.name]
    yield {"command": "chi", "name": a.name, "result": euler_measure(S, a.method), "method": _method_tag(a.method)}


def _cmd_fpoly(a) -> Iterator[Dict]:
    dec = arrangement_decompose(_load(a.file)[a.name])
    yield {"command": "fpoly", "name": a.name, "result": list(dec.f_polynomial()),
           "method": "cells", "chi": dec.euler_measure(),
           "bounded": all(c.bounded for c in dec.cells)}


def _cmd_dim(a) -> Iterator[Dict]:
    yield {"command": "dim", "name": a.name, "result": dimension(_load(a.file)[a.name]), "method": "cells"}


def _cmd_integrate(a) -> Iterator[Dict]:
    doc = _load(a.setfile)
    pieces = []
    for lineno, line in enumerate(Path(a.piecewisefile).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#")[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{a.piecewisefile}:{lineno}: expected '<integer> <set name>'")
        pieces.append((int(parts[0]), doc[parts[1]]))
    if not pieces:
        raise ValueError(f"{a.piecewisefile}: no pieces")
    dims = {S.dim for _, S in pieces}
    if len(dims) != 1:
        raise ValueError("pieces live in different dimensions")
    f = ConstructibleFunction.from_regions(dims.pop(), pieces)
    yield {"command": "integrate", "result": euler_integral(f, a.method), "method": _method_tag(a.method)}


def _cmd_choose(a) -> Iterator[Dict]:
    P = _load(a.file)[a.name]
    chi_p = euler_measure(P, a.method)
    value = euler_measure(combinat.choose_set(P, a.k), a.method)
    yield {"command": "choose", "name": a.name, "k": a.k, "result": value, "method": _method_tag(a.method),
           "chi_P": chi_p, "binomial": combinat.binomial(chi_p, a.k)}


def _cmd_color(a) -> Iterator[Dict]:
    G = combinat.Graph.parse(Path(a.graphfile).read_text(encoding="utf-8"))
    P = _load(a.file)[a.name]
    chi_p = euler_measure(P, a.method)
    chrom = combinat.chromatic_polynomial(G)
    value = euler_measure(combinat.coloring_set(G, P), a.method)
    yield {"command": "color", "name": a.name, "result": value, "method": _method_tag(a.method),
           "chi_P": chi_p, "chromatic": chrom, "chromatic_at_chi": chrom(chi_p)}


def _cmd_fabulous(a) -> Iterator[Dict]:
    P = _load(a.file)[a.name]
    if P.dim != 1:
        raise ValueError(f"fabulous subsets need a set in R^1, {a.name!r} lives in R^{P.dim}")
    line = canonicalize_line(P)
    chi_p = chi_line(line)
    yield {"command": "fabulous", "name": a.name, "result": combinat.fabulous_chi(line),
           "chi_P": chi_p, "fibonacci": combinat.extended_fibonacci(chi_p + 1)}


def _series_record(kind: str, r: ser.RationalFunction, point: int, n: int) -> Dict:
    rec = {"command": f"series {kind}", "series": r}
    try:
        rec["prefix"] = ser.prefix_coefficients(r, n)
    except PoleError:
        pass
    rec["result"] = ser.regularized_value(r, point)
    rec["convention"] = "at_minus_1" if point == -1 else "at_plus_1"
    return rec


def _cmd_series(a) -> Iterator[Dict]:
    kind = a.kind
    if kind == "subsets":
        P = _load(a.file)[a.name]
        if P.dim != 1:
            raise ValueError("subsets series needs a set in R^1")
        yield _series_record(kind, combinat.polyhedral_subsets_series(canonicalize_line(P)), 1, a.terms)
    elif kind == "finite":
        yield _series_record(kind, combinat.finite_subsets_series(a.n), 1, a.terms)
    elif kind == "pairs":
        yield _series_record(kind, combinat.pairs_of_subsets_series(), 1, a.terms)
    elif kind == "chizero":
        s = combinat.chi_zero_subsets_series(a.terms)
        if a.prefix_only:
            yield {"command": "series chizero", "prefix": list(s.coefficients),
                   "counts": combinat.chi_zero_subsets_coefficients(a.terms), "convention": "at_plus_1"}
        else:
            s.regularized_value(1)
    elif kind == "mapspace":
        yield _series_record(kind, ser.mapspace_series(a.m, a.f0, a.f1), -1, a.terms)
    elif kind == "choose2":
        f = ser.RationalFunction(ser.Polynomial(_rational_list(a.numerator)),
                                 ser.Polynomial(_rational_list(a.denominator)))
        yield _series_record(kind, ser.choose2_transform(f), -1, a.terms)


def _read_maps(path: str) -> List[AffineMap]:
    text = Path(path).read_text(encoding="utf-8")
    blocks, cur = [], []
    for line in text.splitlines():
        if line.split("#")[0].strip():
            cur.append(line)
        elif cur:
            blocks.append("\n".join(cur))
            cur = []
    if cur:
        blocks.append("\n".join(cur))
    if not blocks:
        raise ValueError(f"{path}: no affine maps")
    return [AffineMap.parse(b) for b in blocks]


def _cmd_trace(a) -> Iterator[Dict]:
    P = _load(a.file)[a.name]
    for i, g in enumerate(_read_maps(a.mapfile)):
        yield {"command": "trace", "name": a.name, "map": i, "result": trace(P, g, a.method),
               "method": _method_tag(a.method)}


def _cmd_character(a) -> Iterator[Dict]:
    lines = [ln.split("#")[0].strip() for ln in Path(a.valuesfile).read_text(encoding="utf-8").splitlines()]
    lines = [ln for ln in lines if ln]
    if a.table.startswith("builtin:"):
        table = builtin_table(a.table[len("builtin:"):])
    else:
        table = CharacterTable.parse(Path(a.table).read_text(encoding="utf-8"))
    for ln in lines:
        dec = character_multiplicities(_rational_list(ln), table)
        yield {"command": "character", "values": _rational_list(ln),
               "result": list(dec.multiplicities), "is_character": dec.is_character}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eulermeasure", description="Exact Euler measures of polyhedral sets.")
    sub = p.add_subparsers(dest="command", required=True)

    def method(sp, default="both"):
        sp.add_argument("--method", choices=("fiber", "cells", "both"), default=default,
                        help="engine; 'both' checks that the two agree (default: %(default)s)")

    sp = sub.add_parser("chi", help="Euler measure of a named set")
    sp.add_argument("file")
    sp.add_argument("name")
    method(sp)
    sp.set_defaults(run=_cmd_chi)

    for cmd, fn, text in (("fpoly", _cmd_fpoly, "f-polynomial of the arrangement cells in a set"),
                          ("dim", _cmd_dim, "dimension of a set (-1 if empty)")):
        sp = sub.add_parser(cmd, help=text)
        sp.add_argument("file")
        sp.add_argument("name")
        sp.set_defaults(run=fn)

    sp = sub.add_parser("integrate", help="Euler integral of a piecewise-constant function")
    sp.add_argument("setfile")
    sp.add_argument("piecewisefile", help="lines '<integer> <set name>'; the rest of space is 0")
    method(sp)
    sp.set_defaults(run=_cmd_integrate)

    sp = sub.add_parser("choose", help="measure of the set of k-subsets of a set")
    sp.add_argument("file")
    sp.add_argument("name")
    sp.add_argument("k", type=int)
    method(sp)
    sp.set_defaults(run=_cmd_choose)

    sp = sub.add_parser("color", help="measure of the proper colorings of a graph by a set")
    sp.add_argument("graphfile")
    sp.add_argument("file")
    sp.add_argument("name")
    method(sp)
    sp.set_defaults(run=_cmd_color)

    sp = sub.add_parser("fabulous", help="measure of the fabulous subsets of a set in R^1")
    sp.add_argument("file")
    sp.add_argument("name")
    sp.set_defaults(run=_cmd_fabulous)

    sp = sub.add_parser("series", help="Euler series and their regularized values")
    sp.add_argument("kind", choices=("subsets", "finite", "pairs", "chizero", "mapspace", "choose2"))
    sp.add_argument("file", nargs="?", help="set document (subsets)")
    sp.add_argument("name", nargs="?", help="set name (subsets)")
    sp.add_argument("--terms", type=int, default=6, help="number of prefix coefficients")
    sp.add_argument("--n", type=int, default=1, help="measure of the base set (finite)")
    sp.add_argument("--m", type=int, default=2, help="size of the target (mapspace)")
    sp.add_argument("--f0", type=int, default=0, help="vertices of the source (mapspace)")
    sp.add_argument("--f1", type=int, default=1, help="edges of the source (mapspace)")
    sp.add_argument("--numerator", default="1", help="coefficients, low degree first (choose2)")
    sp.add_argument("--denominator", default="1", help="coefficients, low degree first (choose2)")
    sp.add_argument("--prefix-only", action="store_true", help="skip regularization (chizero)")
    sp.set_defaults(run=_cmd_series)

    sp = sub.add_parser("trace", help="Euler measure of the fixed points of affine maps")
    sp.add_argument("file")
    sp.add_argument("name")
    sp.add_argument("mapfile", help="matrix rows then translation; blank lines separate maps")
    method(sp)
    sp.set_defaults(run=_cmd_trace)

    sp = sub.add_parser("character", help="decompose class functions over a character table")
    sp.add_argument("valuesfile", help="one class function per line")
    sp.add_argument("table", help="table file, or builtin:S3, builtin:D4, builtin:C1..C6")
    sp.set_defaults(run=_cmd_character)
    return p


def run_command(argv: Sequence[str]) -> List[Dict]:
    """Run one command and return its records (JSON-ready)."""
    parser = build_parser()
    args = parser.parse_args(list(argv))
    if args.command == "series" and args.kind == "subsets" and not (args.file and args.name):
        parser.error("series subsets needs a set file and a set name")
    return [to_json(rec) for rec in args.run(args)]


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        records = run_command(argv)
    except _DOMAIN_ERRORS as exc:
        print(f"eulermeasure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"eulermeasure: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:        # argparse: usage error or --help
        return exc.code if isinstance(exc.code, int) else 1
    for rec in records:
        print(json.dumps(rec))
    return 0


def main_entry() -> None:
    sys.exit(main())
