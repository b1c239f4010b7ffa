"""Command-line front end: ``dsmt {basis,generate,order,bm,bel,combine,verify}``."""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from typing import Sequence

import numpy as np

from dsmt.belief import MassVector, bel_from_m, build_bm, m_from_bel, plausibility
from dsmt.checks import run_checks
from dsmt.combination import FullContradictionError, combine
from dsmt.files import (
    SchemaError,
    dump_beliefs,
    dump_masses,
    dumps,
    fmt_fraction,
    fmt_real,
    lattice_for,
    load_masses,
    model_from_spec,
    model_to_spec,
    parse_beliefs,
    parse_masses,
    parse_weights,
    read_json,
)
from dsmt.lattice import generate_isotone
from dsmt.ordering import OrderingSpec, dsm_cardinality, strength_vector, total_order
from dsmt.venn import FrameError, FrameModel, build_basis

ORDERS = ("iso", "bibe", "card", "cardinality", "strength")
RULES = ("dsm", "dempster", "yager", "smets", "custom")


class CLIError(Exception):
    pass


def _model(args) -> FrameModel:
    spec = read_json(args.model) if getattr(args, "model", None) else None
    if args.framework == "dst" and spec is not None:
        raise CLIError("--framework dst cannot be combined with --model constraints")
    return model_from_spec(args.n, args.framework, spec)


def _lattice(args):
    model = _model(args)
    if getattr(args, "large", False) and model.kind == "free" and args.n == 6:
        return generate_isotone(6, allow_large=True)
    return lattice_for(model)


def cmd_basis(args, out) -> int:
    model = _model(args)
    basis = build_basis(args.n, model)
    out.write(dumps({
        "n": args.n,
        "model": model_to_spec(model),
        "dim": basis.dim,
        "parts": [
            {"position": p.position, "code": p.code, "length": len(p), "weight": fmt_fraction(w)}
            for p, w in zip(basis.parts, basis.weights)
        ],
    }) + "\n")
    return 0


def cmd_generate(args, out) -> int:
    lat = _lattice(args)
    doc = {"n": args.n, "model": model_to_spec(lat.model), "order": OrderingSpec(args.order).kind, "count": len(lat)}
    if not args.count_only:
        order = total_order(lat, args.order)
        doc["elements"] = [
            {"index": rank, "parts": lat.basis.codes_of(lat.masks[i]), "label": lat.pretty(i)}
            for rank, i in enumerate(order)
        ]
    out.write(dumps(doc) + "\n")
    return 0


def cmd_order(args, out) -> int:
    lat = _lattice(args)
    order = total_order(lat, args.by)
    s = strength_vector(lat)
    rows = [(rank, lat.pretty(i), lat.label(i), dsm_cardinality(lat.masks[i]), fmt_fraction(s[i]))
            for rank, i in enumerate(order)]
    if args.out == "json":
        out.write(dumps([
            {"rank": r, "label": p, "parts": c, "cardinality": k, "strength": st} for r, p, c, k, st in rows
        ]) + "\n")
        return 0
    wl = max(len("label"), *(len(r[1]) for r in rows))
    wc = max(len("parts"), *(len(r[2]) for r in rows))
    out.write(f"{'rank':>4}  {'label':<{wl}}  {'parts':<{wc}}  {'card':>4}  strength\n")
    for r, p, c, k, st in rows:
        out.write(f"{r:>4}  {p:<{wl}}  {c:<{wc}}  {k:>4}  {st}\n")
    return 0


def _pretty_matrix(mat: np.ndarray, labels: list[str], out) -> None:
    """Diagonal cells are bracketed (and red when DSMT_COLOR is set)."""
    color = os.environ.get("DSMT_COLOR", "").lower() in ("1", "always", "yes")
    wl = max(len(x) for x in labels)
    for i, row in enumerate(mat):
        cells = []
        for j, v in enumerate(row):
            cell = f"{f'[{v}]' if i == j else v:>5}"
            if i == j and color:
                cell = f"\x1b[31m{cell}\x1b[0m"
            cells.append(cell)
        out.write(f"{labels[i]:<{wl}}" + "".join(cells) + "\n")


def cmd_bm(args, out) -> int:
    lat = _lattice(args)
    order = total_order(lat, args.order)
    bm = build_bm(lat, order, allow_large=args.large)
    mat = bm.inverse if args.inverse else bm.entries
    if args.out == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(mat.tolist())
        out.write(buf.getvalue())
    elif args.out == "json":
        out.write(dumps({
            "n": args.n,
            "framework": args.framework,
            "model": model_to_spec(lat.model),
            "order": OrderingSpec(args.order).kind,
            "inverse": args.inverse,
            "elements": [lat.basis.codes_of(lat.masks[i]) for i in order],
            "matrix": mat.tolist(),
        }) + "\n")
    else:
        _pretty_matrix(mat, [lat.pretty(i) for i in order], out)
    return 0


def cmd_bel(args, out) -> int:
    obj = read_json(args.file)
    if args.inverse:
        bel = parse_beliefs(obj)
        m = m_from_bel(bel, args.order, open_world=True)
        out.write(dumps(dump_masses(m)) + "\n")
        return 0
    try:
        m = parse_masses(obj)
    except SchemaError as exc:
        raise SchemaError(f"{args.file}: {exc}") from None
    bel = bel_from_m(m, args.order)
    pl = [plausibility(m, mask) for mask in m.lattice.masks]
    out.write(dumps(dump_beliefs(bel, pl)) + "\n")
    return 0


def cmd_combine(args, out) -> int:
    masses: list[MassVector] = [load_masses(p) for p in args.files]
    lattice = masses[0].lattice
    if any(m.lattice is not lattice for m in masses):
        raise CLIError("all mass files must share n, framework and model")
    weights = parse_weights(read_json(args.weights), lattice) if args.weights else None
    try:
        result, k12 = combine(args.rule, masses, weights)
    except FullContradictionError as exc:
        raise CLIError(f"{exc}; use --rule dsm (or yager/smets) instead") from None
    out.write(dumps(dump_masses(result, rule=args.rule, conflict=fmt_real(k12))) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    failed = 0
    for r in run_checks():
        failed += not r.ok
        line = f"{'PASS' if r.ok else 'FAIL'}  {r.name}"
        if r.detail and not r.ok:
            line += f"  ({r.detail})"
        out.write(line + "\n")
        if r.note:
            out.write(f"      note: {r.note}\n")
    out.write(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}\n")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dsmt", description="Belief functions over powersets and hyper-powersets.")
    sub = p.add_subparsers(dest="command", required=True)

    def frame(sp):
        sp.add_argument("-n", type=int, required=True, help="frame size")
        sp.add_argument("--framework", choices=("dst", "dsmt"), default="dsmt")
        sp.add_argument("--model", metavar="FILE", help="JSON list of forced-empty intersections")

    sp = sub.add_parser("basis", help="Venn-part encoding basis")
    frame(sp)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("generate", help="enumerate 2^Θ or D^Θ")
    frame(sp)
    sp.add_argument("--order", choices=ORDERS, default="iso")
    sp.add_argument("--large", action="store_true", help="allow n=6 for the free model")
    sp.add_argument("--count-only", action="store_true")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("order", help="rank, cardinality and strength table")
    frame(sp)
    sp.add_argument("--by", choices=ORDERS, default="strength")
    sp.add_argument("--out", choices=("pretty", "json"), default="pretty")
    sp.set_defaults(func=cmd_order)

    sp = sub.add_parser("bm", help="belief matrix or its inverse")
    frame(sp)
    sp.add_argument("--order", choices=ORDERS, default="strength")
    sp.add_argument("--inverse", action="store_true")
    sp.add_argument("--out", choices=("csv", "json", "pretty"), default="pretty")
    sp.add_argument("--large", action="store_true", help="allow dense matrices above 1024 rows")
    sp.set_defaults(func=cmd_bm)

    sp = sub.add_parser("bel", help="masses to beliefs (or back with --inverse)")
    sp.add_argument("file")
    sp.add_argument("--order", choices=ORDERS, default="strength")
    sp.add_argument("--inverse", action="store_true", help="read a belief file, write masses")
    sp.set_defaults(func=cmd_bel)

    sp = sub.add_parser("combine", help="fuse two or more mass files")
    sp.add_argument("--rule", choices=RULES, required=True)
    sp.add_argument("--weights", metavar="FILE", help="redistribution weights for --rule custom")
    sp.add_argument("files", nargs="+")
    sp.set_defaults(func=cmd_combine)

    sp = sub.add_parser("verify", help="reproduce the reference tables and matrices")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "combine" and len(args.files) < 2:
        print("error: combine needs at least two mass files", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except (CLIError, SchemaError, FrameError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
