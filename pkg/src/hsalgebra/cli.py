"""Command-line entry point: ``hsalgebra {verify,expand,pair,norms,count}``.

Exit codes: 0 success / all suites pass, 1 some suite failed, 2 usage or
input error.  Object arguments (``--phi``, ``--cyl``) accept inline JSON, a
path to a JSON file, or for ``--phi`` the compact form ``3:2,5:-1``.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import codec
from .errors import DomainError, ParameterError, ParseError, UnsupportedError
from .fredholm import index_pairing, pairing_identity
from .khomology import HomT, expand, expand_recursive, generator, pair
from .spectral import LambdaParams, comm_norm_mult, comm_norm_shift, resolvent_count, triple_index
from .suites import SUITES, SuiteConfig, overall_status, report_emit, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _document(text, what):
    text = text.strip()
    if text.startswith(("{", "[")):
        return text
    path = Path(text)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    raise ParseError(what, f"neither inline JSON nor a readable file: {text!r}")


def parse_phi(text, s):
    if text is None:
        # smallest member of T: e_(2) for s > 2, e_(3) for s = 2
        return HomT(s, {2 if s > 2 else 3: 1})
    stripped = text.strip()
    if stripped and not stripped.startswith("{") and ":" in stripped and not Path(stripped).is_file():
        coeffs = {}
        for i, part in enumerate(stripped.split(",")):
            try:
                y, c = part.split(":")
                coeffs[int(y)] = coeffs.get(int(y), 0) + int(c)
            except ValueError as exc:
                raise ParseError(f"phi[{i}]", f"expected y:coefficient, got {part!r}") from exc
        try:
            return HomT(s, coeffs)
        except DomainError as exc:
            raise ParseError("phi", str(exc)) from exc
    phi = codec.loads("homt", _document(stripped, "phi"))
    if phi.s != s:
        raise ParseError("phi.s", f"base {phi.s} disagrees with --s {s}")
    return phi


def parse_cyl(text, s):
    f = codec.loads("cylfn", _document(text, "cyl"))
    if f.s != s:
        raise ParseError("cyl.s", f"base {f.s} disagrees with --s {s}")
    return f


def _frac_str(v):
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _emit(doc, out):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)


def build_parser():
    ap = _Parser(prog="hsalgebra", description="Exact computations and verification suites for HS(s).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=int, default=2, help="base s >= 2")
    common.add_argument("--json-out", help="also write the JSON result here")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run seeded verification suites")
    v.add_argument("--window", type=int, default=1000, help="window half-width M")
    v.add_argument("--lmax", type=int, default=4)
    v.add_argument("--c1", type=_fraction, default=Fraction(1))
    v.add_argument("--c2", type=_fraction, default=Fraction(1))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} or 'all' (repeatable)")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identity)")

    e = sub.add_parser("expand", parents=[common], help="coefficients of a cylinder function in the basis 1_(x)")
    e.add_argument("--cyl", required=True)
    e.add_argument("--method", choices=("direct", "recursive"), default="direct")

    p = sub.add_parser("pair", parents=[common], help="index pairing <[Phi], [m_{1_X}(I-VV*)]>")
    p.add_argument("--phi", required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--x", type=int, help="use X = 1_(x)")
    grp.add_argument("--cyl", help="use a 0/1 cylinder function X")
    p.add_argument("--lmax", type=int, default=0)
    p.add_argument("--c1", type=_fraction, default=Fraction(1))
    p.add_argument("--c2", type=_fraction, default=Fraction(1))

    n = sub.add_parser("norms", parents=[common], help="exact commutator norms with the Dirac operator")
    n.add_argument("--phi", required=True)
    n.add_argument("--c1", type=_fraction, default=Fraction(1))
    n.add_argument("--c2", type=_fraction, default=Fraction(1))
    n.add_argument("--lmax", type=int, default=2)
    n.add_argument("--m", type=int, default=1, help="power of V")
    n.add_argument("--cyl", help="units function F(l, .) for the multiplication commutator")
    n.add_argument("--l", type=int, default=0, help="index l of --cyl in the family")

    c = sub.add_parser("count", parents=[common], help="resolvent count #{Lambda <= R} per parity")
    c.add_argument("--phi")
    c.add_argument("--R", type=_fraction, action="append", required=True)
    c.add_argument("--c1", type=_fraction, default=Fraction(1))
    c.add_argument("--c2", type=_fraction, default=Fraction(1))
    return ap


def _verify(a):
    names = a.suite or ["all"]
    if "all" in names:
        suites = SUITES
    else:
        suites = tuple(x for name in names for x in name.split(","))
    cfg = SuiteConfig(a.s, a.window, a.lmax, a.c1, a.c2, a.seed, suites, a.json_out)
    reports = run_suite(cfg)
    if a.json_out:
        Path(a.json_out).write_bytes(report_emit(reports, "json", cfg, a.timing))
    sys.stdout.buffer.write(report_emit(reports, a.format, cfg, a.timing))
    sys.stdout.flush()
    return 0 if overall_status(reports) == "pass" else 1


def _expand(a):
    f = parse_cyl(a.cyl, a.s)
    coeffs = (expand if a.method == "direct" else expand_recursive)(f)
    _emit({"s": a.s, "coeffs": [{"x": x, "c": c} for x, c in sorted(coeffs.items())]}, a.json_out)
    return 0


def _pair(a):
    phi = parse_phi(a.phi, a.s)
    X = generator(a.x, a.s) if a.x is not None else parse_cyl(a.cyl, a.s)
    res = index_pairing(phi, X, a.lmax)
    doc = {
        "index": res.index,
        "pair": pair(phi, X),
        "triple_index": triple_index(phi, LambdaParams(a.c1, a.c2), X, a.lmax).index,
        "identity_index": pairing_identity(phi, a.lmax).index,
        "detail": res.to_dict(),
    }
    _emit(doc, a.json_out)
    return 0


def _norms(a):
    phi = parse_phi(a.phi, a.s)
    p = LambdaParams(a.c1, a.c2)
    sn = comm_norm_shift(a.m, p, phi, max(a.lmax, a.m))
    doc = {
        "shift": {"m": a.m, "exact": _frac_str(sn.exact), "entry_scan": _frac_str(sn.entry_scan),
                  "numeric": sn.numeric},
        "C": _frac_str(p.bound_constant(a.s)),
    }
    if a.cyl:
        mn = comm_norm_mult({a.l: parse_cyl(a.cyl, a.s)}, p, phi)
        doc["mult"] = {"exact": _frac_str(mn.exact), "bound": _frac_str(mn.bound),
                       "exact_witness": list(mn.exact_witness) if mn.exact_witness else None}
    _emit(doc, a.json_out)
    return 0


def _count(a):
    phi = parse_phi(a.phi, a.s)
    p = LambdaParams(a.c1, a.c2)
    rows = [{"R": _frac_str(R), "count": resolvent_count(phi, p, R)} for R in a.R]
    _emit({"phi": {str(y): c for y, c in phi.coeffs.items()}, "counts": rows}, a.json_out)
    return 0


VERBS = {"verify": _verify, "expand": _expand, "pair": _pair, "norms": _norms, "count": _count}


def main(argv=None) -> int:
    try:
        a = build_parser().parse_args(argv)
        return VERBS[a.verb](a)
    except (UsageError, ParseError, ParameterError, DomainError, UnsupportedError) as exc:
        print(f"hsalgebra: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
