"""Literals and file formats: rationals, quadratic-field elements, polynomials,
curves, quadratic forms, invariant providers, and plain-text reports.

Files are JSON with fixed key order and canonical graded-lex term order, so
identical data serializes byte-for-byte identically.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Union

from .errors import Rm5Error
from .experiments import ICProvider
from .invariants import FIELD_Q, FIELD_Q5, SexticModel
from .mestre import TernaryQF
from .multipoly import MultiPoly
from .qf_reduce import PolyQF
from .quadfield import QuadExtElem

VERSION = "rm5moduli 0.1.0"

_RAT = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")
_QUAD = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt5)?\s*$"
)


def parse_rational(text: str) -> Fraction:
    """`p/q` or `p`; decimals are rejected."""
    text = text.strip()
    if not _RAT.match(text):
        raise Rm5Error(f"bad rational literal {text!r} (decimal forbidden)")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_quad(text: str) -> QuadExtElem:
    """`p/q + r/s*sqrt5` (either part optional, `sqrt5` alone allowed)."""
    t = text.strip()
    if "sqrt5" not in t:
        return QuadExtElem(parse_rational(t), 0, 5)
    mt = _QUAD.match(t)
    if not mt or (mt.group("a") is None and mt.group("sign") is None and "sqrt5" not in t):
        raise Rm5Error(f"bad quadratic-field literal {text!r}")
    a = parse_rational(mt.group("a")) if mt.group("a") else Fraction(0)
    b = parse_rational(mt.group("b")) if mt.group("b") else Fraction(1)
    if mt.group("sign") == "-":
        b = -b
    if mt.group("a") is None and mt.group("sign") is None:
        b = abs(b)
    return QuadExtElem(a, b, 5)


def format_quad(x: Union[QuadExtElem, Fraction]) -> str:
    if not isinstance(x, QuadExtElem):
        return format_rational(Fraction(x))
    if x.b == 0:
        return format_rational(x.a)
    sign = "+" if x.b >= 0 else "-"
    head = f"{format_rational(x.a)} " if x.a != 0 else ""
    babs = abs(x.b)
    tail = "sqrt5" if babs == 1 else f"{format_rational(babs)}*sqrt5"
    if not head:
        return tail if x.b > 0 else f"-{tail}"
    return f"{head}{sign} {tail}"


# -- polynomial block ---------------------------------------------------------------


def poly_to_obj(p: MultiPoly) -> dict:
    return {
        "vars": list(p.vars),
        "terms": [
            {"e": list(e), "c": format_rational(c)} for e, c in p.sorted_terms()
        ],
    }


def poly_from_obj(obj: dict) -> MultiPoly:
    vs = tuple(obj["vars"])
    terms = {}
    for t in obj["terms"]:
        terms[tuple(int(k) for k in t["e"])] = parse_rational(t["c"])
    return MultiPoly(vs, terms)


def dump_poly(p: MultiPoly) -> str:
    return json.dumps(poly_to_obj(p), indent=1)


def load_poly(text: str) -> MultiPoly:
    return poly_from_obj(json.loads(text))


# -- curve files ---------------------------------------------------------------------


def dump_curve(model: SexticModel) -> str:
    tag = "q" if model.field == FIELD_Q else "q5"
    coeffs = [format_quad(c) for c in model.coeffs]
    return json.dumps({"field": tag, "coeffs": coeffs}, indent=1)


def load_curve(text: str) -> SexticModel:
    obj = json.loads(text)
    tag = obj.get("field")
    if tag not in ("q", "q5"):
        raise Rm5Error(f"curve field must be 'q' or 'q5', got {tag!r}")
    coeffs = [parse_quad(c) for c in obj["coeffs"]]
    if len(coeffs) != 7:
        raise Rm5Error("curve file needs coefficients c0..c6")
    if tag == "q":
        return SexticModel([c.rational_value() for c in coeffs], FIELD_Q)
    return SexticModel(coeffs, FIELD_Q5)


# -- quadratic-form files -------------------------------------------------------------


def dump_qf(q: PolyQF) -> str:
    entries = [poly_to_obj(q.gram[i][j])["terms"] for i in range(q.n) for j in range(q.n)]
    return json.dumps({"vars": list(q.vars), "gram": entries}, indent=1)


def load_qf(text: str) -> PolyQF:
    obj = json.loads(text)
    vs = tuple(obj["vars"])
    flat = obj["gram"]
    n = round(len(flat) ** 0.5)
    if n * n != len(flat) or n < 2:
        raise Rm5Error("gram must hold n^2 row-major entries")
    polys = [poly_from_obj({"vars": list(vs), "terms": t}) for t in flat]
    gram = [[polys[i * n + j] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] != gram[j][i]:
                raise Rm5Error("gram matrix in file is not symmetric")
    return PolyQF(vs, gram)


def dump_ternary(q: TernaryQF) -> str:
    entries = []
    for i in range(3):
        for j in range(3):
            e = q.gram[i][j]
            entries.append([] if e == 0 else [{"e": [], "c": format_rational(Fraction(e))}])
    return json.dumps({"vars": [], "gram": entries}, indent=1)


def load_ternary(text: str) -> TernaryQF:
    obj = json.loads(text)
    if obj.get("vars"):
        raise Rm5Error("expected a constant (rational) quadratic form")
    flat = obj["gram"]
    if len(flat) != 9:
        raise Rm5Error("ternary form needs 9 gram entries")
    vals = []
    for t in flat:
        if not t:
            vals.append(Fraction(0))
        else:
            vals.append(parse_rational(t[0]["c"]))
    gram = [vals[0:3], vals[3:6], vals[6:9]]
    return TernaryQF(gram)


# -- invariant-provider files -----------------------------------------------------------


def dump_provider(p: ICProvider) -> str:
    return json.dumps(
        {
            "D": p.d,
            "vars": ["m", "n"],
            "I2": poly_to_obj(p.i2)["terms"],
            "I4": poly_to_obj(p.i4)["terms"],
            "I6": poly_to_obj(p.i6)["terms"],
            "I10": poly_to_obj(p.i10)["terms"],
        },
        indent=1,
    )


def load_provider(text: str, path: str = "external") -> ICProvider:
    obj = json.loads(text)
    vs = tuple(obj.get("vars", ("m", "n")))
    polys = {}
    for key in ("I2", "I4", "I6", "I10"):
        if key not in obj:
            raise Rm5Error(f"provider file is missing the {key} block")
        polys[key] = poly_from_obj({"vars": list(vs), "terms": obj[key]})
    return ICProvider(
        int(obj["D"]), polys["I2"], polys["I4"], polys["I6"], polys["I10"], provenance=path
    )


# -- rendering -----------------------------------------------------------------------


def render_form(q: PolyQF, names=None) -> str:
    """Human form of a PolyQF: `x1^2 - 5*x2^2 + (m^2 - 5*n^2 - 5)*x3^2`."""
    names = names or [f"x{i+1}" for i in range(q.n)]
    parts = []
    for i in range(q.n):
        for j in range(i, q.n):
            coeff = q.coefficient_form(i, j)
            if coeff.is_zero():
                continue
            mono = f"{names[i]}^2" if i == j else f"{names[i]}*{names[j]}"
            if coeff.is_constant():
                c = coeff.constant_value()
                body = mono if abs(c) == 1 else f"{format_rational(abs(c))}*{mono}"
                parts.append((c < 0, body))
            else:
                neg = coeff.leading()[1] < 0
                inner = coeff if not neg else coeff * -1
                parts.append((neg, f"({inner})*{mono}"))
    if not parts:
        return "0"
    out = []
    for k, (neg, body) in enumerate(parts):
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def transcript_text(transcript) -> str:
    lines = [f"# {VERSION} reduction transcript: chain {transcript.chain}"]
    for st in transcript.stages:
        lines.append("")
        lines.append(f"== stage {st.name} ({st.annotation}) ==")
        if st.change is not None:
            lines.append(f"basis change: {st.change.provenance}; scale {_scale_str(st.scale)}")
        for desc, ok in st.checks:
            lines.append(f"  check {desc}: {'PASS' if ok else 'FAIL'}")
        lines.append(f"{st.name} = {render_form(st.form)} : "
                     f"{'PASS' if st.passed() else 'FAIL'}")
    lines.append("")
    verdict = "PASS" if transcript.all_passed() else "FAIL"
    lines.append(f"chain {transcript.chain}: {verdict}")
    return "\n".join(lines)


def _scale_str(scale) -> str:
    if isinstance(scale, tuple):
        return f"({scale[0]})/({scale[1]})"
    return str(scale)


def report_header(title: str, **params) -> list[str]:
    lines = [f"# {VERSION} {title}"]
    if params:
        lines.append("# " + "  ".join(f"{k} = {v}" for k, v in params.items()))
    return lines
