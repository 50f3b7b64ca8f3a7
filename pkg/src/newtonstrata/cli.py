"""Command line front end.

Exit codes: 0 on success, 2 for invalid input, 3 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import catalog
from .kottwitz import (InternalInvariantError, KappaMismatchError, SigmaConjClass, b_of_lambda,
                       enumerate_set, kappa_G, make_class, minimal_lambda)
from .rootdatum import InvalidDatumError, Pi1Element, RootDatum, dot
from .strata import (HypothesisNotMet, cell_reports, closure_poset, hn_indecomposables,
                     hn_levi_membership_check, is_fully_hn_decomposable, is_hn_decomposable,
                     max_hn_indecomposable, stratum_reports)

EXIT_INPUT = 2
EXIT_INTERNAL = 3


class InputError(ValueError):
    pass


# -- serialization ------------------------------------------------------------------

def q(x) -> str:
    """Rational as "p/q" in lowest terms, integers as "p"."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qvec(v) -> list:
    return [q(x) for x in v]


def class_json(datum: RootDatum, c: SigmaConjClass) -> dict:
    return {
        "newton": qvec(c.newton),
        "levi": list(c.levi),
        "kappa": list(c.kappa.coords),
        "kappa_G": list(kappa_G(datum, c).coords),
        "twist": None if c.twist is None else list(c.twist.coords),
    }


def class_from_json(datum: RootDatum, obj: dict) -> SigmaConjClass:
    twist = obj.get("twist")
    tw = None if twist is None else Pi1Element(datum.full, tuple(twist))
    return make_class(datum, datum.levi(obj["levi"]), obj["kappa"], tw)


def stratum_json(datum, r) -> dict:
    out = {"index": r.index}
    out.update(class_json(datum, r.cls))
    out.update({
        "basic": r.is_basic,
        "hn_decomposable": r.hn_decomposable,
        "hn_witness": None if r.hn_witness is None else list(r.hn_witness),
        "classical_point": r.classical_point,
        "classical_witness": None if r.classical_witness is None else list(r.classical_witness),
        "classical_point_closure": r.classical_point_closure,
        "wa_meets": r.wa_meets,
        "closure_upset": list(r.closure_upset),
    })
    if r.strict_discrepancy is not None:
        out["strict_discrepancy"] = r.strict_discrepancy
    return out


_SCALAR_ARRAY = re.compile(r"\[\s+([^\[\]{}]*?)\s+\]")


def dump(obj) -> str:
    """Indented JSON with arrays of scalars kept on one line."""
    text = json.dumps(obj, indent=2)
    return _SCALAR_ARRAY.sub(lambda m: "[" + " ".join(m.group(1).split()) + "]", text)


# -- input parsing ------------------------------------------------------------------

def parse_vector(text: str, what: str, rational=False) -> tuple:
    text = text.strip()
    try:
        if text.startswith("["):
            items = json.loads(text)
        else:
            items = [t for t in text.replace(" ", "").split(",") if t != ""] if text else []
        if rational:
            return tuple(Fraction(str(t)) for t in items)
        vals = []
        for t in items:
            f = Fraction(str(t))
            if f.denominator != 1:
                raise ValueError
            vals.append(int(f))
        return tuple(vals)
    except (ValueError, json.JSONDecodeError, ZeroDivisionError):
        raise InputError(f"could not parse {what} {text!r}") from None


def load_group(args) -> RootDatum:
    if args.group:
        try:
            with open(args.group) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"cannot read group file: {e}") from None
        return catalog.from_json(obj)
    if not args.family or args.n is None:
        raise InputError("give --group FILE or --family and --n")
    return catalog.build(catalog.GroupSpec(args.family, args.n))


def _vec_arg(d: RootDatum, text, what, default_zero=True):
    if text is None:
        if default_zero:
            return tuple([0] * d.rank)
        raise InputError(f"{what} is required")
    v = parse_vector(text, what)
    if len(v) != d.rank:
        raise InputError(f"{what} has length {len(v)}, expected rank {d.rank}")
    return v


def _mu(d, args):
    mu = _vec_arg(d, args.mu, "--mu")
    if not d.is_dominant(mu):
        raise InputError(f"--mu {list(mu)} is not dominant")
    return mu


def _kottwitz_set(d, args):
    s = enumerate_set(d, _mu(d, args), _vec_arg(d, args.b_kappa, "--b-kappa"))
    if getattr(args, "twist", None):
        s = s.translate(_vec_arg(d, args.twist, "--twist"))
    return s


# -- commands -------------------------------------------------------------------

def cmd_enumerate(d, args) -> str:
    s = _kottwitz_set(d, args)
    reports = stratum_reports(s, strict=args.strict_integral)
    top = max_hn_indecomposable(s)
    return dump({
        "group": d.label,
        "mu": list(s.mu),
        "b_kappa": list(s.b_kappa.coords),
        "nu_b": qvec(s.nu_b),
        "delta": qvec(s.delta),
        "minuscule": d.is_minuscule(s.mu),
        "fully_hn_decomposable": is_fully_hn_decomposable(s),
        "max_hn_indecomposable": s.index(top),
        "strata": [stratum_json(d, r) for r in reports],
    })


def _label(c) -> str:
    return "(" + ",".join(q(x) for x in c.newton) + ")"


def cmd_poset(d, args) -> str:
    s = _kottwitz_set(d, args)
    poset = closure_poset(s, bun_order=args.bun_order)
    if args.format == "json":
        return dump({
            "orientation": "bun" if args.bun_order else "grassmannian",
            "nodes": [{"index": i, "newton": qvec(c.newton)} for i, c in enumerate(s)],
            "edges": [list(e) for e in poset.edges],
            "closure": {str(i): list(v) for i, v in sorted(poset.closure.items())},
        })
    lines = ["digraph newton_strata {", "  rankdir=BT;"]
    for i, c in enumerate(s):
        lines.append(f'  n{i} [label="{_label(c)}"];')
    for a, b in poset.edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_cells(d, args) -> str:
    s = _kottwitz_set(d, args)
    cells = []
    for r in cell_reports(s):
        cells.append({
            "lambda": list(r.lam),
            "wa_excluded": r.wa_excluded,
            "classical_points": r.classical_points,
            "generic_class": class_json(d, r.generic_class),
            "generic_is_dense": r.generic_is_dense,
            "dim_upper": q(r.dim_upper),
            "dim_exact": r.dim_exact,
        })
    return dump({"group": d.label, "mu": list(s.mu), "b_kappa": list(s.b_kappa.coords),
                 "excluded": [c["lambda"] for c in cells if c["wa_excluded"]], "cells": cells})


def cmd_b_of_lambda(d, args) -> str:
    lam = _vec_arg(d, args.lam, "--lambda", default_zero=False)
    c = b_of_lambda(d, lam)
    return dump({"group": d.label, "lambda": list(lam), "class": class_json(d, c), "verified": True})


def cmd_minimal_lambda(d, args) -> str:
    kappa = _vec_arg(d, args.kappa, "--kappa", default_zero=False)
    levi = d.full if args.levi is None else d.levi(parse_vector(args.levi, "--levi"))
    try:
        c = make_class(d, levi, kappa)
    except ValueError as e:
        raise InputError(str(e)) from None
    lam = minimal_lambda(d, c)
    return dump({"group": d.label, "class": class_json(d, c), "lambda": list(lam),
                 "rho_pairing": q(dot(d.rho, lam)),
                 "weight_pairings": [q(dot(w, lam)) for w in d.weight_lifts],
                 "verified": True})


def cmd_hn_report(d, args) -> str:
    s = _kottwitz_set(d, args)
    rows = []
    for i, c in enumerate(s):
        dec, wit = is_hn_decomposable(s, c)
        row = {"index": i, "newton": qvec(c.newton), "hn_decomposable": dec,
               "witness": None if wit is None else list(wit)}
        if dec:
            row["levi_membership"] = hn_levi_membership_check(s, c, wit)
        rows.append(row)
    top = max_hn_indecomposable(s)
    return dump({
        "group": d.label, "mu": list(s.mu), "b_kappa": list(s.b_kappa.coords),
        "delta": qvec(s.delta),
        "indecomposable": [s.index(c) for c in hn_indecomposables(s)],
        "max_hn_indecomposable": s.index(top),
        "fully_hn_decomposable": is_fully_hn_decomposable(s),
        "strata": rows,
    })


COMMANDS = {
    "enumerate": cmd_enumerate,
    "poset": cmd_poset,
    "cells": cmd_cells,
    "b-of-lambda": cmd_b_of_lambda,
    "minimal-lambda": cmd_minimal_lambda,
    "hn-report": cmd_hn_report,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="newton-strata",
                                description="Kottwitz sets, Newton strata posets and related invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    def group_args(sp):
        sp.add_argument("--group", help="JSON root datum file")
        sp.add_argument("--family", choices=catalog.FAMILIES)
        sp.add_argument("--n", type=int, help="rank parameter of the family")

    def set_args(sp):
        sp.add_argument("--mu", help="dominant cocharacter, e.g. 4,0")
        sp.add_argument("--b-kappa", dest="b_kappa", help="integral lift of kappa(b), default 0")
        sp.add_argument("--twist", help="integral lift of a basic b0: report on the inner form of b0")

    for name in ("enumerate", "poset", "cells", "hn-report"):
        sp = sub.add_parser(name)
        group_args(sp)
        set_args(sp)
        if name == "enumerate":
            sp.add_argument("--strict-integral", action="store_true",
                            help="also run the integral classical-point test")
        if name == "poset":
            sp.add_argument("--format", choices=("dot", "json"), default="dot")
            sp.add_argument("--bun-order", action="store_true",
                            help="orient by specialization in Bun_G (opposite order)")
        else:
            sp.add_argument("--format", choices=("json",), default="json")
    sp = sub.add_parser("b-of-lambda")
    group_args(sp)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--format", choices=("json",), default="json")
    sp = sub.add_parser("minimal-lambda")
    group_args(sp)
    sp.add_argument("--kappa", required=True, help="integral lift of kappa_M")
    sp.add_argument("--levi", help="centralizer Levi indices (default: all, i.e. basic)")
    sp.add_argument("--format", choices=("json",), default="json")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        d = load_group(args)
        out = COMMANDS[args.command](d, args)
    except InternalInvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, InvalidDatumError, HypothesisNotMet, KappaMismatchError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
