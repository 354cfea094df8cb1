"""The two classical parameter families of genus-2 curves with the degree-5
real multiplication, and their conversions into the (g, h) chart.

Each conversion carries an invariant-match postcondition: the curve's
invariants agree, as a weighted projective point, with the chart formulas at
(g_params, h_params).  The identity holds symbolically in the parameter ring
and is exposed here both as a symbolic check (clearing denominators) and as a
numeric check at a given parameter point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import unipoly
from .errors import DegenerateCurveError, Rm5Error
from .invariants import (
    FIELD_Q,
    SexticModel,
    clebsch_of_form,
    ic_from_clebsch,
    ic_from_gh,
)
from .multipoly import MultiPoly, parse_poly


@dataclass(frozen=True)
class RatFunc:
    """num/den with MultiPoly parts; no reduction, equality by cross products."""

    num: MultiPoly
    den: MultiPoly

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __pow__(self, k: int) -> "RatFunc":
        return RatFunc(self.num**k, self.den**k)

    def __eq__(self, other) -> bool:
        return self.num * other.den == other.num * self.den


# -- the degree-5 two-parameter family (curves with a rational Weierstrass point) --


_MESTRE_F = "x^5 + (a-3)*x^4 + (0-a+b+3)*x^3 + (a^2-a-2*b-1)*x^2 + b*x + a"


def mestre_family_curve(a, b) -> SexticModel:
    """y^2 = x f(a, b, x); raises when x f has repeated roots."""
    a, b = Fraction(a), Fraction(b)
    f = [a, b, a * a - a - 2 * b - 1, -a + b + 3, a - 3, 1]
    coeffs = [Fraction(0)] + f  # multiply by x
    model = SexticModel(coeffs, FIELD_Q)
    if not model.is_genus2():
        raise DegenerateCurveError("x f(a, b, x) has repeated roots")
    return model


def mestre_family_gh(a, b) -> tuple[Fraction, Fraction]:
    """(g, h) of the curve y^2 = x f(a, b, x) in the surface chart."""
    a, b = Fraction(a), Fraction(b)
    den = a * a - 5 * a - 2 * b + 1
    if den == 0:
        raise Rm5Error("excluded denominator a^2 - 5a - 2b + 1 = 0")
    g = 2 * (3 * a**3 - 8 * a * a - 5 * a * b - b * b - 3 * a) / (3 * den * den)
    h = (
        -(a * a)
        * (
            4 * a**5
            - 4 * a**4
            - 24 * a**3 * b
            - a * a * b * b
            - 40 * a**3
            + 34 * a * a * b
            + 30 * a * b * b
            + 4 * b**3
            + 91 * a * a
            + 14 * a * b
            - b * b
            - 4 * a
        )
        / (2 * den**5)
    )
    if h == 0:
        raise Rm5Error("h vanishes: not a curve point")
    return g, h


_MESTRE_GH_SYMBOLIC = {
    "g_num": "2*(3*a^3 - 8*a^2 - 5*a*b - b^2 - 3*a)",
    "g_den": "3*(a^2 - 5*a - 2*b + 1)^2",
    "h_num": "(0 - a^2)*(4*a^5 - 4*a^4 - 24*a^3*b - a^2*b^2 - 40*a^3 + 34*a^2*b"
    " + 30*a*b^2 + 4*b^3 + 91*a^2 + 14*a*b - b^2 - 4*a)",
    "h_den": "2*(a^2 - 5*a - 2*b + 1)^5",
}


# -- the degree-5 three-parameter family --------------------------------------------

# completed square of y^2 + (x^3 + x + 1 + c(x^2+x)) y = quartic:
# y^2 = (x^3 + c x^2 + (c+1) x + 1)^2 + 4*(b + (1+3b)x + (1-bd+3b)x^2
#        + (b-2bd-d)x^3 - bd x^4)


def brumer_family_curve(b, c, d) -> SexticModel:
    b, c, d = Fraction(b), Fraction(c), Fraction(d)
    cubic = [Fraction(1), c + 1, c, Fraction(1)]  # x^3 + c x^2 + (c+1) x + 1
    square = unipoly.mul(cubic, cubic)
    quartic = [b, 1 + 3 * b, 1 - b * d + 3 * b, b - 2 * b * d - d, -b * d]
    coeffs = unipoly.add(square, unipoly.scale(quartic, Fraction(4)))
    model = SexticModel(coeffs, FIELD_Q)
    if not model.is_genus2():
        raise DegenerateCurveError("the family member is singular")
    return model


_BRUMER_H_NUM = (
    "b*c^6*d - 12*b^2*c^4*d^2 + 48*b^3*c^2*d^3 - 64*b^4*d^4 - b^2*c^4*d - 9*b*c^5*d"
    " + 8*b^3*c^2*d^2 + 72*b^2*c^3*d^2 - b*c^4*d^2 - 16*b^4*d^3 - 144*b^3*c*d^3"
    " + 8*b^2*c^2*d^3 - 16*b^3*d^4 + b*c^5 - 40*b^2*c^3*d + 12*b*c^4*d - c^5*d"
    " + 144*b^3*c*d^2 - 152*b^2*c^2*d^2 + 52*b*c^3*d^2 + 416*b^3*d^3 - 192*b^2*c*d^3"
    " - b^2*c^3 - 9*b*c^4 + 36*b^3*c*d + 334*b^2*c^2*d + 63*b*c^3*d + 6*c^4*d"
    " + 24*b^3*d^2 + 132*b^2*c*d^2 - 80*b*c^2*d^2 + c^3*d^2 + 528*b^2*d^3 - 36*b*c*d^3"
    " - 27*b^2*c^2 + 13*b*c^3 - c^4 + 108*b^3*d - 720*b^2*c*d + 74*b*c^2*d + 5*c^3*d"
    " - 456*b^2*d^2 - 96*b*c*d^2 - 36*c^2*d^2 + 216*b*d^3 + 27*b^3 + 252*b^2*c"
    " + 56*b*c^2 + 6*c^3 - 66*b^2*d - 627*b*c*d - 43*c^2*d - 381*b*d^2 - 63*c*d^2"
    " + 27*d^3 - 567*b^2 + 27*b*c + 4*c^2 - 121*b*d - 147*c*d - 81*d^2 - 484*b"
    " - 39*c - 34*d - 103"
)

_BRUMER_G_NUM = (
    "0 - c^4 + 8*b*c^2*d - 16*b^2*d^2 + 6*c^3 - 24*b*c*d + 24*b*c + c^2 - 68*b*d"
    " - 24*c*d - 108*b - 30*c - 36*d - 61"
)

_BRUMER_DEN = "c^2 - 4*b*d - 2*b - 3*c - 2*d - 5"


def brumer_family_gh(b, c, d) -> tuple[Fraction, Fraction]:
    b, c, d = Fraction(b), Fraction(c), Fraction(d)
    point = {"b": b, "c": c, "d": d}
    vs = ("b", "c", "d")
    den = parse_poly(_BRUMER_DEN, vs).evaluate(point)
    if den == 0:
        raise Rm5Error("excluded denominator c^2 - 4bd - 2b - 3c - 2d - 5 = 0")
    g = parse_poly(_BRUMER_G_NUM, vs).evaluate(point) / (6 * den * den)
    h = parse_poly(_BRUMER_H_NUM, vs).evaluate(point) / den**5
    if h == 0:
        raise Rm5Error("h vanishes: not a curve point")
    return g, h


# -- symbolic invariant-match identities ---------------------------------------------


def _symbolic_family_identity(curve_coeffs, g: RatFunc, h: RatFunc) -> bool:
    """Cross-multiplied weighted-ratio identities in the parameter ring.

    With X the curve invariants (polynomials) and Y the chart invariants at
    (g, h) (rational functions), checks Y2^2 X4 = X2^2 Y4, Y2^3 X6 = X2^3 Y6,
    Y2^5 X10 = X2^5 Y10, i.e. existence of lambda = Y2/X2 in the fraction
    field.  Exact polynomial identities; no lambda is constructed.
    """
    cl = clebsch_of_form(list(curve_coeffs))
    icx = ic_from_clebsch(cl)
    vs = g.num.vars
    one = MultiPoly.const(vs, 1)
    x = [RatFunc(icx.i2, one), RatFunc(icx.i4, one), RatFunc(icx.i6, one), RatFunc(icx.i10, one)]
    y = [
        RatFunc(g.num * 24 * g.den**0 + g.den * 6, g.den),
        RatFunc(g.num * g.num * 9, g.den * g.den),
        RatFunc(
            g.num**3 * 81 * h.den + g.num * g.num * g.den * 18 * h.den + h.num * g.den**3 * 36,
            g.den**3 * h.den,
        ),
        RatFunc(h.num * h.num * 4, h.den * h.den),
    ]
    weights = (1, 2, 3, 5)
    for k in (1, 2, 3):
        left = y[0] ** weights[k] * x[k]
        right = x[0] ** weights[k] * y[k]
        if not left == right:
            return False
    return True


def mestre_family_identity() -> bool:
    """The invariant match for the two-parameter family, in Q[a, b]."""
    vs = ("a", "b")
    a = MultiPoly.var(vs, "a")
    b = MultiPoly.var(vs, "b")
    one = MultiPoly.const(vs, 1)
    f = [
        a,
        b,
        a * a - a - b * 2 - one,
        a * -1 + b + one * 3,
        a - one * 3,
        one,
    ]
    coeffs = [MultiPoly.zero(vs)] + f
    g = RatFunc(parse_poly(_MESTRE_GH_SYMBOLIC["g_num"], vs), parse_poly(_MESTRE_GH_SYMBOLIC["g_den"], vs))
    h = RatFunc(parse_poly(_MESTRE_GH_SYMBOLIC["h_num"], vs), parse_poly(_MESTRE_GH_SYMBOLIC["h_den"], vs))
    return _symbolic_family_identity(coeffs, g, h)


def brumer_family_identity() -> bool:
    """The invariant match for the three-parameter family, in Q[b, c, d]."""
    vs = ("b", "c", "d")
    b = MultiPoly.var(vs, "b")
    c = MultiPoly.var(vs, "c")
    d = MultiPoly.var(vs, "d")
    one = MultiPoly.const(vs, 1)
    cubic = [one, c + one, c, one]  # 1 + (c+1)x + cx^2 + x^3
    square = _poly_list_mul(cubic, cubic, vs)
    quartic = [
        b,
        one + b * 3,
        one - b * d + b * 3,
        b - b * d * 2 - d,
        b * d * -1,
    ]
    coeffs = []
    for i in range(7):
        s = square[i] if i < len(square) else MultiPoly.zero(vs)
        q4 = quartic[i] * 4 if i < len(quartic) else MultiPoly.zero(vs)
        coeffs.append(s + q4)
    den = parse_poly(_BRUMER_DEN, vs)
    g = RatFunc(parse_poly(_BRUMER_G_NUM, vs), den * den * 6)
    h = RatFunc(parse_poly(_BRUMER_H_NUM, vs), den**5)
    return _symbolic_family_identity(coeffs, g, h)


def _poly_list_mul(p, q, vs):
    out = [MultiPoly.zero(vs)] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            out[i + j] = out[i + j] + pi * qj
    return out


def family_invariant_match(model: SexticModel, g: Fraction, h: Fraction) -> bool:
    """Numeric invariant match of a family member against its chart point."""
    from .invariants import igusa_clebsch_from_sextic, weighted_equal

    return weighted_equal(igusa_clebsch_from_sextic(model), ic_from_gh(g, h), FIELD_Q)
