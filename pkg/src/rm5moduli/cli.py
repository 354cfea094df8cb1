"""Command-line surface.

Exit codes: 0 on success, 1 on a domain error (printed to stderr), 2 on a
usage error (argparse).  All commands are deterministic given identical
inputs and seeds.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io as rio
from .arith import solve_norm_equation
from .errors import Rm5Error
from .experiments import builtin_d5_provider, run_pd_experiment
from .invariants import (
    FIELD_Q,
    FIELD_Q5,
    clebsch_invariants,
    igusa_clebsch_from_sextic,
    ic_from_mn,
    normalize_ic,
    weighted_equal,
)
from .mestre import conic_rational_point
from .moduli import MNPoint, SurfacePoint, classify_ic, classify_mn, classify_zgh
from .models import ModelRequest, model_from_point
from .multipoly import parse_poly
from .qf_reduce import (
    PolyQF,
    disc_reduce_partial,
    disc_reduce_square,
    forms_equivalent_over_Q,
    poly_degree,
    replay_infinity_chain,
    replay_rm5_chain,
    simple_degree_reduce,
    shift_variables,
)
from .quadfield import QuadExtElem

_FIELD = {"q": FIELD_Q, "q5": FIELD_Q5}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Rm5Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rm5moduli", description=__doc__)
    sub = p.add_subparsers(required=True)

    sp = sub.add_parser("invariants", help="invariants of a curve file")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--field", choices=("q", "q5"))
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("classify", help="moduli classification of a point")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--mn", nargs=2, metavar=("M", "N"))
    g.add_argument("--gh", nargs=2, metavar=("G", "H"))
    g.add_argument("--ic", nargs=4, metavar=("I2", "I4", "I6", "I10"))
    sp.add_argument("--z", help="z coordinate for --gh (on the double cover)")
    sp.add_argument("--field", choices=("q", "q5"), default="q")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("model", help="Weierstrass model for an (m, n) point")
    sp.add_argument("--mn", nargs=2, required=True, metavar=("M", "N"))
    sp.add_argument("--field", choices=("q", "q5"), default="q")
    sp.add_argument("--witness", nargs=2, metavar=("U", "V"))
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_model)

    sp = sub.add_parser("conic", help="rational point or equivalence of conics")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--solve", metavar="FILE")
    g.add_argument("--equivalent", nargs=2, metavar=("FILE1", "FILE2"))
    sp.set_defaults(func=cmd_conic)

    sp = sub.add_parser("reduce", help="one reduction step on a quadratic form file")
    sp.add_argument("--qf", required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--degree", type=int, metavar="TARGET")
    g.add_argument("--disc-square", metavar="G")
    g.add_argument("--disc-partial", nargs=2, metavar=("G", "R"))
    g.add_argument("--shift", metavar="VAR=VALUE,...")
    sp.add_argument("--ansatz", help="per-coordinate monomials: '1,g|1|1,g'")
    sp.add_argument("--out", required=True)
    sp.add_argument("--transcript")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("replay", help="replay a verified reduction chain")
    sp.add_argument("--chain", choices=("rm5", "infinity"), required=True)
    sp.set_defaults(func=cmd_replay)

    sp = sub.add_parser("family", help="family member curve and its chart point")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--mestre", nargs=2, metavar=("A", "B"))
    g.add_argument("--brumer", nargs=3, metavar=("B", "C", "D"))
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("experiment", help="seeded conic-equivalence experiment")
    sp.add_argument("--pd", type=int, required=True, metavar="D")
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--ic-file")
    sp.set_defaults(func=cmd_experiment)
    return p


def _ic_str(ic) -> str:
    return "(" + " : ".join(rio.format_quad(v) for v in ic.tuple()) + ")"


def cmd_invariants(args) -> int:
    model = rio.load_curve(Path(args.curve).read_text())
    if args.field and _FIELD[args.field] != model.field:
        raise Rm5Error(f"curve file is over {model.field!r}, not --field {args.field}")
    ic = normalize_ic(igusa_clebsch_from_sextic(model))
    cl = clebsch_invariants(model)
    print(_ic_str(ic))
    print(
        "clebsch:",
        ", ".join(rio.format_quad(v) for v in (cl.a, cl.b, cl.c, cl.d)),
    )
    return 0


def cmd_classify(args) -> int:
    fld = _FIELD[args.field]
    if args.mn:
        m, n = (rio.parse_quad(x) for x in args.mn)
        m = m.rational_value() if m.is_rational() else m
        n = n.rational_value() if n.is_rational() else n
        result = classify_mn(m, n, fld)
    elif args.gh:
        if args.z is None:
            raise Rm5Error("--gh needs --z (a point of the double cover)")
        g, h = (rio.parse_rational(x) for x in args.gh)
        result = classify_zgh(SurfacePoint(rio.parse_rational(args.z), g, h), fld)
    else:
        vals = [rio.parse_rational(x) for x in args.ic]
        from .invariants import IgusaClebsch

        result = classify_ic(IgusaClebsch(*vals, field=fld), fld)
    print(f"case {result.tag}")
    for desc, val in result.conditions:
        print(f"  condition: {desc} -> {val}")
    for key, val in result.witness.items():
        if key == "norm_witness" and val is not None:
            u, v = val
            print(f"  witness: u = {rio.format_quad(u)}, v = {rio.format_quad(v)}")
        else:
            print(f"  {key} = {rio.format_quad(val) if isinstance(val, (Fraction, QuadExtElem)) else val}")
    return 0 if result.tag != "none" else 0


def cmd_model(args) -> int:
    m, n = (rio.parse_rational(x) for x in args.mn)
    fld = _FIELD[args.field]
    witness = None
    if args.witness:
        witness = tuple(rio.parse_rational(x) for x in args.witness)
    req = ModelRequest(MNPoint(m, n), fld, witness)
    model = model_from_point(req)
    Path(args.out).write_text(rio.dump_curve(model) + "\n")
    ok = weighted_equal(igusa_clebsch_from_sextic(model), ic_from_mn(m, n, fld), fld)
    print(f"curve written to {args.out}")
    print(f"invariant roundtrip: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_conic(args) -> int:
    if args.solve:
        q = rio.load_ternary(Path(args.solve).read_text())
        point, cert = conic_rational_point(q)
        if point is not None:
            print(f"point {point}")
        else:
            print(f"no rational point; certificate place {cert}")
        return 0
    q1 = rio.load_ternary(Path(args.equivalent[0]).read_text())
    q2 = rio.load_ternary(Path(args.equivalent[1]).read_text())
    verdict = forms_equivalent_over_Q(q1, q2)
    print("equivalent" if verdict else "not equivalent")
    return 0


def cmd_reduce(args) -> int:
    q = rio.load_qf(Path(args.qf).read_text())
    lines = rio.report_header("reduction step", qf=args.qf)
    if args.shift:
        offsets = {}
        for item in args.shift.split(","):
            name, _, val = item.partition("=")
            offsets[name.strip()] = rio.parse_rational(val)
        out = shift_variables(q, offsets)
        lines.append(f"shift {args.shift}")
    elif args.degree is not None:
        if not args.ansatz:
            raise Rm5Error("--degree needs --ansatz (per-coordinate monomials)")
        ansatz = [part.split(",") for part in args.ansatz.split("|")]
        res = simple_degree_reduce(q, args.degree - 1, ansatz)
        if res is None:
            raise Rm5Error("no reducing vector found for this ansatz")
        out = res.form
        lines.append("vector: (" + ", ".join(str(c) for c in res.vector) + ")")
        lines.append(f"Q(v) = {res.value}")
    elif args.disc_square:
        g = parse_poly(args.disc_square, q.vars)
        ansatz = [part.split(",") for part in args.ansatz.split("|")] if args.ansatz else None
        res = disc_reduce_square(q, g, ansatz)
        if res is None:
            raise Rm5Error("no reducing vector found")
        out = res.form
        lines.append("vector: (" + ", ".join(str(c) for c in res.vector) + ")")
        lines.append(f"Q(v) = {res.value}")
    else:
        gtext, rtext = args.disc_partial
        res = disc_reduce_partial(q, parse_poly(gtext, q.vars), int(rtext))
        if res is None:
            raise Rm5Error("no reducing vectors found")
        out = res.form
        for k, v in enumerate(res.vectors):
            lines.append(f"vector {k + 1}: (" + ", ".join(str(c) for c in v) + ")")
    Path(args.out).write_text(rio.dump_qf(out) + "\n")
    lines.append(f"degree {poly_degree(q)} -> {poly_degree(out)}")
    lines.append(f"disc: {out.disc()}")
    lines.append(f"reduced form written to {args.out}")
    text = "\n".join(lines)
    if args.transcript:
        Path(args.transcript).write_text(text + "\n")
    print(text)
    return 0


def cmd_replay(args) -> int:
    chain = replay_rm5_chain if args.chain == "rm5" else replay_infinity_chain
    transcript = chain(verify=False)
    print(rio.transcript_text(transcript))
    return 0 if transcript.all_passed() else 1


def cmd_family(args) -> int:
    from .families import (
        brumer_family_curve,
        brumer_family_gh,
        family_invariant_match,
        mestre_family_curve,
        mestre_family_gh,
    )

    if args.mestre:
        a, b = (rio.parse_rational(x) for x in args.mestre)
        model = mestre_family_curve(a, b)
        g, h = mestre_family_gh(a, b)
    else:
        b, c, d = (rio.parse_rational(x) for x in args.brumer)
        model = brumer_family_curve(b, c, d)
        g, h = brumer_family_gh(b, c, d)
    Path(args.out).write_text(rio.dump_curve(model) + "\n")
    ok = family_invariant_match(model, g, h)
    print(f"curve written to {args.out}")
    print(f"(g, h) = ({rio.format_rational(g)}, {rio.format_rational(h)})")
    print(f"invariant match: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_experiment(args) -> int:
    provider = None
    if args.ic_file:
        provider = rio.load_provider(Path(args.ic_file).read_text(), args.ic_file)
    report = run_pd_experiment(args.pd, args.samples, args.height, provider, args.seed)
    print(report.to_text(rio.VERSION))
    return 0


if __name__ == "__main__":
    sys.exit(main())
