"""Command-line front end.

Exit status: 0 on success, 1 if ``verify`` reports a failure, 2 on usage or
parse errors (message on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import betticalc, extcalc, report, sheafalg, spaces, wallfind
from .sheafalg import SheafParseError, parse_sheaf
from .spaces import SpaceParseError, parse_space


class UsageError(Exception):
    pass


def _sheaf(text):
    try:
        return parse_sheaf(text)
    except SheafParseError as exc:
        raise UsageError(f"cannot parse sheaf {text!r}: {exc}") from None


def _interval_json(iv):
    if iv is None:
        return None
    return {"lo": iv.lo, "hi": iv.hi}


def _value_text(iv):
    if iv is None:
        return "UNKNOWN"
    return str(iv.lo) if iv.exact else f"UNKNOWN {iv}"


def cmd_cohomology(args):
    F = _sheaf(" ".join(args.sheaf))
    ivs = sheafalg.h_intervals(F)
    data = {
        "sheaf": sheafalg.format_sheaf(F),
        "h": [iv.lo if iv.exact else None for iv in ivs],
        "intervals": [_interval_json(iv) for iv in ivs],
    }
    text = ", ".join(f"h{i} = {_value_text(iv)}" for i, iv in enumerate(ivs))
    return data, text


def cmd_hilbert(args):
    F = _sheaf(" ".join(args.sheaf))
    P = sheafalg.hilbert(F)
    return {"sheaf": sheafalg.format_sheaf(F), "hilbert": str(P)}, str(P)


def _pair(name_or_sheaf, gamma):
    if name_or_sheaf in extcalc.PAIRS and gamma is None:
        return extcalc.PAIRS[name_or_sheaf]
    F = _sheaf(name_or_sheaf)
    try:
        return extcalc.PairExpr(1 if gamma is None else gamma, F)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_ext(args):
    if args.i not in (0, 1, 2):
        raise UsageError("Ext degree must be 0, 1 or 2")
    pair_mode = args.pair or args.gamma1 is not None or args.gamma2 is not None
    pair_mode = pair_mode or (args.F in extcalc.PAIRS and args.G in extcalc.PAIRS)
    if pair_mode:
        L1, L2 = _pair(args.F, args.gamma1), _pair(args.G, args.gamma2)
        res = extcalc.ext_dims_pair(L1, L2, extcalc.paper_facts())
        what = f"Ext{args.i}({L1}, {L2})"
    else:
        F, G = _sheaf(args.F), _sheaf(args.G)
        try:
            res = extcalc.ext_dims_sheaf(F, G, route=args.route)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        what = f"Ext{args.i}({sheafalg.format_sheaf(F)}, {sheafalg.format_sheaf(G)})"
    if res.status.value == "INCONSISTENT":
        return {"query": what, "status": "INCONSISTENT", "dim": None, "interval": None}, f"{what} = INCONSISTENT"
    iv = res.intervals[args.i]
    data = {"query": what, "status": "UNIQUE" if res.is_unique(args.i) else "UNKNOWN",
            "dim": res.dim(args.i), "interval": _interval_json(iv)}
    return data, f"{what} = {_value_text(iv)}"


def _frac(a):
    return str(a.numerator) if a.denominator == 1 else str(a)


def cmd_walls(args):
    r, s, t = args.r, args.s, args.t
    if r < 0 or s < 0 or r + s == 0:
        raise UsageError("need r, s >= 0 with r + s > 0")
    bounds = None
    if args.bounds:
        if len(args.bounds) != 2:
            raise UsageError("bounds are R S")
        bounds = tuple(args.bounds)
    whole = wallfind.PairPoly.of(r, s, t, 1)
    try:
        walls = wallfind.find_walls(whole, bounds)
        cands = [wallfind.classify(c) for c in wallfind.wall_candidates(whole, bounds)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = {
        "whole": [r, s, t],
        "walls": [
            {"alpha": _frac(w.alpha), "sub": [w.sub.P.r, w.sub.P.s, w.sub.P.t],
             "quot": [w.quot.P.r, w.quot.P.s, w.quot.P.t], "verdict": w.verdict.value}
            for w in walls
        ],
    }
    text = ", ".join(w.render() for w in walls) if walls else "no walls"
    if args.candidates:
        data["candidates"] = [
            {"alpha": _frac(c.alpha), "sub": [c.sub.P.r, c.sub.P.s, c.sub.P.t],
             "quot": [c.quot.P.r, c.quot.P.s, c.quot.P.t], "verdict": c.verdict.value}
            for c in cands
        ]
        text += "\ncandidates: " + ", ".join(
            f"α = {_frac(c.alpha)} [sub {wallfind._show(c.sub.P)} | quot {wallfind._show(c.quot.P)}] {c.verdict.value}"
            for c in cands
        )
    return data, text


NAMED_SPACES = {
    "M": lambda: betticalc.assemble_theorem12().computed,
    "M0+(4m+2n+1)": lambda: betticalc.assemble_M0plus_4m2n1().poly,
    "M0+(4m+2n-1)": lambda: betticalc.assemble_M0plus_4m2n_minus1().poly,
}


def cmd_poincare(args):
    text = " ".join(args.space)
    if text.replace(" ", "") in NAMED_SPACES:
        name = text.replace(" ", "")
        poly = NAMED_SPACES[name]()
    else:
        try:
            S = parse_space(text)
        except SpaceParseError as exc:
            raise UsageError(f"cannot parse space {text!r}: {exc}") from None
        try:
            poly = spaces.poincare(S)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        name = spaces.format_space(S)
    return {"space": name, "poincare": poly.to_json()}, poly.render()


def cmd_verify(args):
    checks = report.verify_all()
    data = json.loads(report.to_json(checks))
    return data, report.render_text(checks)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="quadsheaf", description="Exact calculators for sheaves on P^1 x P^1.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cohomology", parents=[common], help="h^0, h^1, h^2 of a sheaf, e.g. 'O(1,-2)'")
    c.add_argument("sheaf", nargs="+")
    c.set_defaults(func=cmd_cohomology)

    h = sub.add_parser("hilbert", parents=[common], help="Hilbert polynomial of a sheaf expression")
    h.add_argument("sheaf", nargs="+")
    h.set_defaults(func=cmd_hilbert)

    e = sub.add_parser("ext", parents=[common], help="dim Ext^i(F, G) for sheaves or pairs (L1..L5)")
    e.add_argument("i", type=int)
    e.add_argument("F")
    e.add_argument("G")
    e.add_argument("--route", choices=("joint", "direct", "serre"), default="joint")
    e.add_argument("--pair", action="store_true", help="treat F and G as pairs with a section")
    e.add_argument("--gamma1", type=int, choices=(0, 1))
    e.add_argument("--gamma2", type=int, choices=(0, 1))
    e.set_defaults(func=cmd_ext)

    w = sub.add_parser("walls", parents=[common], help="walls for pairs with P = rm + sn + t")
    w.add_argument("r", type=int)
    w.add_argument("s", type=int)
    w.add_argument("t", type=int)
    w.add_argument("bounds", type=int, nargs="*", metavar="R S")
    w.add_argument("--candidates", action="store_true", help="also list rejected candidates")
    w.set_defaults(func=cmd_walls)

    q = sub.add_parser("poincare", parents=[common], help="Poincare polynomial of a space expression")
    q.add_argument("space", nargs="+")
    q.set_defaults(func=cmd_poincare)

    v = sub.add_parser("verify", parents=[common], help="run every check")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    as_json = getattr(args, "json", False) or getattr(args, "format", "text") == "json"
    try:
        data, text = args.func(args)
    except UsageError as exc:
        print(f"quadsheaf: error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(data, indent=2, default=_default) if as_json else text)
    if args.command == "verify" and data["summary"]["fail"]:
        return 1
    return 0


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(type(o))


if __name__ == "__main__":
    sys.exit(main())
