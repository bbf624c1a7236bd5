"""sf: batch driver for verification, obstructions, cohomology and table reproduction.

Exit status: 0 on a passing verdict, 1 on a failing one, 2 on usage or
data errors (diagnostics on stderr).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from . import catalog as cat_mod
from ._expr import ExpressionError
from .exterior import FormError, format_form, parse_form
from .halfflat import (
    ZeroOneForm,
    lambda_sign_analysis,
    obstruction_certificate,
    scan_basis_alphas,
    verify_half_flat,
)
from .lie import LieAlgebraPresentation, PresentationError, cohomology_report, parse_presentation
from .scalars import ScalarError, format_scalar, parse_scalar

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(doc, fmt: str, text_lines: Sequence[str]):
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _params(items: Optional[List[str]]):
    out = {}
    for item in items or []:
        name, eq, value = item.partition("=")
        if not eq or not name:
            raise UsageError(f"--param expects name=p/q, got {item!r}")
        try:
            out[name.strip()] = parse_scalar(value.strip())
        except ValueError as exc:
            raise UsageError(f"--param {item!r}: {exc}") from None
    return out


def _algebra(args) -> LieAlgebraPresentation:
    if bool(args.catalog) == bool(args.file):
        raise UsageError("give exactly one algebra source: --catalog NAME or --file PATH")
    params = _params(args.param)
    if args.catalog:
        return cat_mod.catalog_instantiate(args.catalog, params).presentation
    with open(args.file) as fh:
        return parse_presentation(fh.read(), params)


def _resolve_pair(path: str) -> str:
    if os.path.exists(path):
        return path
    alt = os.path.join(cat_mod.DATA_DIR, "examples", os.path.basename(path))
    if os.path.exists(alt):
        return alt
    raise FileNotFoundError(f"pair file {path!r} not found")


# -- subcommands ----------------------------------------------------------------

def cmd_verify(args) -> int:
    g = _algebra(args)
    if g.dim != 6:
        raise UsageError(f"{g.name} has dimension {g.dim}; verification needs a six-dimensional algebra")
    pair = None
    if args.pair:
        with open(_resolve_pair(args.pair)) as fh:
            pair = cat_mod.parse_pair(fh.read(), os.path.basename(args.pair))
        omega, rho = pair.omega(), pair.rho()
    elif args.omega and args.rho:
        omega = parse_form(args.omega, 6, 2, rootd=args.rootd)
        rho = parse_form(args.rho, 6, 3, rootd=args.rootd)
    else:
        raise UsageError("give --pair PATH or both --omega and --rho")
    rep = verify_half_flat(g, omega, rho)
    doc = rep.to_json()
    ok = rep.verdict
    lines = [f"algebra {g.name}", f"omega = {format_form(omega)}", f"rho   = {format_form(rho)}"]
    lines += [f"  {k:26s} {'yes' if v else 'no'}" for k, v in doc["flags"].items()]
    if rep.lam is not None:
        lines.append(f"  lambda = {format_scalar(rep.lam)}, phi(omega) = {format_scalar(rep.phi_omega)}")
    if rep.signature:
        lines.append(f"  metric: {rep.signature}")
    if pair is not None:
        expected = pair.expected_gram()
        match = rep.gram is not None and [list(r) for r in rep.gram] == expected
        doc["printed_metric_matches"] = match
        lines.append(f"  Gram equals printed metric: {'yes' if match else 'no'}")
        ok = ok and match
    lines += [f"  error: {e}" for e in rep.errors]
    lines.append("PASS" if ok else "FAIL")
    doc["pass"] = ok
    _emit(doc, args.format, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_obstruct(args) -> int:
    g = _algebra(args)
    if g.dim != 6:
        raise UsageError(f"{g.name} has dimension {g.dim}; certificates need a six-dimensional algebra")
    if args.scan:
        certs = scan_basis_alphas(g)
    else:
        if not args.alpha:
            raise UsageError("give --alpha FORM or --scan")
        certs = [obstruction_certificate(g, parse_form(args.alpha, 6, 1, rootd=args.rootd))]
    found = any(c.identically_zero for c in certs)
    lines = []
    for c in certs:
        line = f"{c.algebra}  alpha={format_form(c.alpha, 'e')}  dimZ3={c.dim_z3} dimZ4={c.dim_z4}  {c.verdict}"
        if c.witness:
            line += f"  witness {c.witness[1]}*{c.witness[0]}"
        lines.append(line)
    if found:
        lines.append("no half-flat SU(3)-structure exists")
    elif args.scan:
        lines.append("no basis one-form certifies non-existence (this proves nothing)")
    doc = certs[0].to_json() if not args.scan else {"algebra": g.name, "certificates": [c.to_json() for c in certs]}
    _emit(doc, args.format, lines)
    return EXIT_PASS if found else EXIT_FAIL


def cmd_cohomology(args) -> int:
    g = _algebra(args)
    rep = cohomology_report(g)
    lines = [f"algebra {g.name}", f"  jacobi      {rep['jacobi']}"]
    if rep["jacobi"]:
        lines += [f"  h*          {tuple(rep['h'])}", f"  center_dim  {rep['center_dim']}",
                  f"  derived_dim {rep['derived_dim']}", f"  unimodular  {rep['unimodular']}"]
    _emit(rep, args.format, lines)
    return EXIT_PASS if rep["jacobi"] else EXIT_FAIL


def cmd_lambda_sign(args) -> int:
    g = _algebra(args)
    if g.dim != 6:
        raise UsageError(f"{g.name} has dimension {g.dim}; lambda analysis needs a six-dimensional algebra")
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    res = lambda_sign_analysis(g, samples=args.samples, seed=args.seed)
    lines = [f"algebra {g.name}", f"  {res.status}: {res.label}"]
    if res.status != "IdenticallyZero":
        lines.append(f"  samples={res.samples} seed={res.seed} negative={res.violations}")
    if res.witness_rho is not None:
        lines += [f"  rho = {format_form(res.witness_rho)}", f"  lambda(rho) = {format_scalar(res.witness_lambda)}"]
    _emit(res.to_json(), args.format, lines)
    return EXIT_PASS


def cmd_catalog(args) -> int:
    cat = cat_mod.load_catalog()
    if args.action != "list":
        raise UsageError("catalog supports: list")
    names = cat.names()
    rows = [{"id": r.id, "family": r.family, "subcase": r.subcase, "condition": r.condition,
             "samples": [{k: format_scalar(v) for k, v in s} for s in r.samples], "derived": r.derived}
            for r in cat.rows]
    doc = {"algebras": names, "rows": rows,
           "examples": [{"file": e.name + ".pair", "algebras": [a for a, _ in e.algebras]} for e in cat.examples]}
    lines = ["algebras:"] + [f"  {n}" for n in names]
    if args.rows:
        lines.append("subcase rows:")
        for r in rows:
            cond = r["condition"] or ("derived samples" if r["derived"] else "all parameters")
            lines.append(f"  {r['id']:32s} {cond}")
    _emit(doc, args.format, lines)
    return EXIT_PASS


def cmd_reproduce(args) -> int:
    rows = cat_mod.reproduce(args.scope, samples=args.samples, seed=args.seed)
    summ = cat_mod.summary(rows)
    doc = {"scope": args.scope, "samples": args.samples, "seed": args.seed,
           "summary": summ, "rows": [r.to_json() for r in rows]}
    lines = []
    for r in rows:
        line = f"{r.status:4s}  {r.scope:10s} {r.id:48s} {r.check}: {r.computed}"
        if r.note:
            line += f"  [{r.note}]"
        lines.append(line)
    lines.append(f"{summ['PASS']} PASS, {summ['FAIL']} FAIL, {summ['INFO']} INFO")
    _emit(doc, args.format, lines)
    return EXIT_FAIL if summ["FAIL"] else EXIT_PASS


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sf", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--catalog", metavar="NAME", help="catalog algebra, e.g. A4.1+r2")
    alg.add_argument("--file", metavar="PATH", help=".alg presentation file")
    alg.add_argument("--param", action="append", metavar="NAME=P/Q", help="parameter binding (repeatable)")
    alg.add_argument("--rootd", type=int, default=None, help="radicand d for 'rt' in form coefficients")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common, alg], help="check a half-flat pair exactly")
    v.add_argument("--pair", metavar="PATH", help=".pair file (catalog examples are found by file name)")
    v.add_argument("--omega", metavar="FORM")
    v.add_argument("--rho", metavar="FORM")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("obstruct", parents=[common, alg], help="obstruction certificate for a one-form")
    o.add_argument("--alpha", metavar="FORM", help="one-form such as e4 or e4+2*e5")
    o.add_argument("--scan", action="store_true", help="try all six basis one-forms")
    o.set_defaults(func=cmd_obstruct)

    c = sub.add_parser("cohomology", parents=[common, alg], help="Lie algebra cohomology and invariants")
    c.set_defaults(func=cmd_cohomology)

    lam = sub.add_parser("lambda-sign", parents=[common, alg], help="sign of lambda on closed three-forms")
    lam.add_argument("--samples", type=int, default=10000)
    lam.add_argument("--seed", type=int, default=0)
    lam.set_defaults(func=cmd_lambda_sign)

    cl = sub.add_parser("catalog", parents=[common], help="catalog contents")
    cl.add_argument("action", choices=("list",))
    cl.add_argument("--rows", action="store_true", help="also list subcase rows")
    cl.set_defaults(func=cmd_catalog)

    r = sub.add_parser("reproduce", parents=[common], help="reproduce the tables row by row")
    r.add_argument("--scope", required=True, choices=cat_mod.SCOPES + ("all",))
    r.add_argument("--samples", type=int, default=10000)
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_reproduce)
    return p


DATA_ERRORS = (UsageError, cat_mod.CatalogError, PresentationError, FormError, ExpressionError,
               ScalarError, ZeroOneForm, OSError, ValueError)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DATA_ERRORS as exc:
        print(f"sf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
