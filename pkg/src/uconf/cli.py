"""Batch command line front end.

Every command loads a JSON model (a bundled name like ``m3`` or a file
path), computes, and prints a single JSON document on stdout with all
rationals as strings.  Diagnostics go to stderr.  Exit codes: 0 for
success, 1 when a verification came out false, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import AlgebraError
from .expr import render
from .functionals import evaluate, peierls_bracket, render_poly, to_functional
from .laws import run_suites
from .modelio import ModelFormatError, load_field, load_model, load_section
from .sections import convolve, section_bracket
from .tensors import (
    count_square_enumerated,
    count_words_enumerated,
    dim_T_fibre,
    dim_TboxT_fibre,
)


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _rows(pairs) -> list[dict]:
    return [
        {"config": list(cfg.members), "element": render(val)} for cfg, val in pairs
    ]


def cmd_dims(args) -> int:
    base, _ = load_model(args.model)
    if not 0 <= args.k <= len(base.points):
        raise ModelFormatError(
            "k must lie between 0 and %d for this model" % len(base.points)
        )
    rows = []
    ok = True
    for cfg in base.configurations(args.k):
        t_closed = dim_T_fibre(base, cfg)
        t_enum = count_words_enumerated(base, cfg)
        s_closed = dim_TboxT_fibre(base, cfg)
        s_enum = count_square_enumerated(base, cfg)
        match = t_closed == t_enum and s_closed == s_enum
        ok = ok and match
        rows.append(
            {
                "config": list(cfg.members),
                "T": t_closed,
                "T_enumerated": t_enum,
                "TboxT": s_closed,
                "TboxT_enumerated": s_enum,
                "match": match,
            }
        )
    report = {"k": args.k, "configurations": rows, "ok": ok}
    t_values = sorted({r["T"] for r in rows})
    s_values = sorted({r["TboxT"] for r in rows})
    if len(t_values) == 1:
        report["T"] = t_values[0]
    if len(s_values) == 1:
        report["TboxT"] = s_values[0]
    _emit(report)
    return 0 if ok else 1


def cmd_axioms(args) -> int:
    base, kernel = load_model(args.model)
    seed = args.seed
    if "UCONF_SEED" in os.environ:
        raw = os.environ["UCONF_SEED"]
        try:
            seed = int(raw)
        except ValueError:
            raise ModelFormatError("UCONF_SEED must be an integer, got %r" % raw)
    results = run_suites(
        base,
        kernel,
        seed=seed,
        cases=args.cases,
        max_points=args.max_points,
        max_degree=args.max_degree,
    )
    laws = []
    for r in results:
        row = {"name": r.name, "cases": r.cases, "ok": r.ok}
        if r.detail:
            row["detail"] = r.detail
        laws.append(row)
    ok = all(r.ok for r in results)
    _emit(
        {
            "model": args.model,
            "seed": seed,
            "cases": args.cases,
            "max_degree": args.max_degree,
            "max_points": (
                len(base.points) if args.max_points is None else args.max_points
            ),
            "laws": laws,
            "ok": ok,
        }
    )
    return 0 if ok else 1


def cmd_bracket(args) -> int:
    base, kernel = load_model(args.model)
    lhs = load_section(args.lhs, base)
    rhs = load_section(args.rhs, base)
    out = section_bracket(lhs, rhs, kernel)
    _emit(
        {
            "max_points": out.max_points,
            "support": _rows(out.support),
            "dropped": _rows(out.dropped),
        }
    )
    return 0


def cmd_convolve(args) -> int:
    base, _ = load_model(args.model)
    lhs = load_section(args.lhs, base)
    rhs = load_section(args.rhs, base)
    out = convolve(lhs, rhs)
    _emit(
        {
            "max_points": out.max_points,
            "support": _rows(out.support),
            "dropped": _rows(out.dropped),
        }
    )
    return 0


def cmd_eval(args) -> int:
    base, _ = load_model(args.model)
    s = load_section(args.lhs, base)
    phi = load_field(args.field, base)
    f = to_functional(s, base)
    _emit({"functional": render_poly(f), "value": str(evaluate(f, phi))})
    return 0


def cmd_peierls_check(args) -> int:
    base, kernel = load_model(args.model)
    s = load_section(args.lhs, base)
    t = load_section(args.rhs, base)
    symbolic = to_functional(section_bracket(s, t, kernel), base)
    functional = peierls_bracket(
        to_functional(s, base), to_functional(t, base), kernel, base
    )
    equal = symbolic == functional
    _emit(
        {
            "section_bracket": render_poly(symbolic),
            "peierls_bracket": render_poly(functional),
            "equal": equal,
        }
    )
    return 0 if equal else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uconf",
        description="Exact computations in the bundle algebra over finite "
        "configuration spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--model",
            default="m3",
            help="bundled model name or path to a model JSON file",
        )
        p.set_defaults(handler=handler)
        return p

    p = add("dims", cmd_dims, "closed-form vs enumerated fibre dimensions")
    p.add_argument("--k", type=int, required=True, help="configuration size")

    p = add("axioms", cmd_axioms, "run the seeded invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=25, help="instances per law")
    p.add_argument("--max-points", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=3)

    p = add("bracket", cmd_bracket, "section bracket of two section files")
    p.add_argument("--lhs", required=True, help="section JSON file")
    p.add_argument("--rhs", required=True, help="section JSON file")

    p = add("convolve", cmd_convolve, "convolution of two section files")
    p.add_argument("--lhs", required=True, help="section JSON file")
    p.add_argument("--rhs", required=True, help="section JSON file")

    p = add("eval", cmd_eval, "evaluate a section's functional at a field")
    p.add_argument("--lhs", required=True, help="section JSON file")
    p.add_argument("--field", required=True, help="field JSON file")

    p = add(
        "peierls-check",
        cmd_peierls_check,
        "compare the symbolic and functional brackets of two section files",
    )
    p.add_argument("--lhs", required=True, help="section JSON file")
    p.add_argument("--rhs", required=True, help="section JSON file")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ModelFormatError, AlgebraError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
