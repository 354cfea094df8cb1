"""Coordinates and classification on the degree-5 Hilbert modular surface.

Charts: the double-cover coordinates (z, g, h) with z^2 = ek_rhs(g, h), the
rational (m, n) chart glued by mn_to_zgh / zgh_to_mn, and the weight-(1,2,5)
chart (z6 : s2 : sigma5) with its discriminant form.  The classifier sorts a
moduli point over Q or Q(sqrt5) into the six families of rational-curve
invariants (tags 1/1a/1b/1c, 2, 3, 4, 5, 6) or reports the first failed
condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import unipoly
from .arith import is_norm_from_sqrt5, is_square, rational_sqrt, solve_norm_equation
from .errors import Rm5Error
from .invariants import (
    FIELD_Q,
    FIELD_Q5,
    IgusaClebsch,
    SexticModel,
    ic_from_gh,
    ic_from_mn,
    weighted_equal,
)
from .multipoly import MultiPoly
from .quadfield import QuadExtElem, qe_sqrt

MN = Union[Fraction, int, QuadExtElem]


def ek_rhs(g, h):
    """Right-hand side of z^2 = 2(-972 g^5 - ... - 108 h); any coefficient ring."""
    if isinstance(g, MultiPoly):
        two = MultiPoly.const(g.vars, 2)
    else:
        g, h = Fraction(g), Fraction(h)
        two = Fraction(2)
    return (
        g**5 * -972
        - g**4 * 324
        - g**3 * 27
        - g * g * h * 4500
        - g * h * 1350
        + h * h * 6250
        - h * 108
    ) * two


@dataclass(frozen=True)
class SurfacePoint:
    """(z, g, h) with z^2 = ek_rhs(g, h), checked on construction."""

    z: Fraction
    g: Fraction
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "z", Fraction(self.z))
        object.__setattr__(self, "g", Fraction(self.g))
        object.__setattr__(self, "h", Fraction(self.h))
        if self.z * self.z != ek_rhs(self.g, self.h):
            raise Rm5Error("point does not satisfy the surface equation")


@dataclass(frozen=True)
class MNPoint:
    m: MN
    n: MN

    def __post_init__(self):
        for name in ("m", "n"):
            v = getattr(self, name)
            if not isinstance(v, QuadExtElem):
                object.__setattr__(self, name, Fraction(v))


@dataclass(frozen=True)
class WilsonPoint:
    z6: Fraction
    s2: Fraction
    sigma5: Fraction


def mn_to_zgh(p: MNPoint | tuple) -> SurfacePoint:
    """Forward chart map; the result satisfies the surface equation exactly."""
    m, n = _mn(p)
    q = m * m - 5 * n * n
    g = (q - 9) / 30
    # 30g + 9 = q and 15g + 2 = (q - 5)/2
    h = m * q * (q - 5) / 12500 + Fraction(9, 6250) * (250 * g * g + 75 * g + 6)
    z = n * q * (q - 5) / 50
    return SurfacePoint(z, g, h)


def zgh_to_mn(p: SurfacePoint) -> MNPoint:
    """Inverse chart map, defined off g in {-3/10, -2/15}."""
    denom = (30 * p.g + 9) * (15 * p.g + 2)
    if denom == 0:
        raise Rm5Error("excluded locus: g is -3/10 or -2/15")
    m = (6250 * p.h - 9 * (250 * p.g * p.g + 75 * p.g + 6)) / denom
    n = 25 * p.z / denom
    out = MNPoint(m, n)
    if mn_to_zgh(out) != p:
        raise Rm5Error("chart inversion failed")  # pragma: no cover
    return out


def _mn(p) -> tuple:
    if isinstance(p, MNPoint):
        return p.m, p.n
    m, n = p
    return (m if isinstance(m, QuadExtElem) else Fraction(m),
            n if isinstance(n, QuadExtElem) else Fraction(n))


def wilson_to_gh(p: WilsonPoint | tuple) -> tuple[Fraction, Fraction]:
    """(g, h) = (-(2 z6^2 + s2)/(12 z6^2), sigma5/(64 z6^5)); needs z6 != 0."""
    z6, s2, sigma5 = _wilson(p)
    if z6 == 0:
        raise Rm5Error("z6 = 0 corresponds to the points at infinity")
    g = -(2 * z6 * z6 + s2) / (12 * z6 * z6)
    h = sigma5 / (64 * z6**5)
    return g, h


def wilson_delta_prime(p: WilsonPoint | tuple):
    """The weight-10 discriminant form of the (z6 : s2 : sigma5) chart."""
    z6, s2, s5 = _wilson(p)
    return (
        64 * z6**6 * s2**2
        + 96 * z6**4 * s2**3
        + 48 * z6**2 * s2**4
        - 256 * z6**5 * s5
        + 8 * s2**5
        - 400 * z6**3 * s2 * s5
        - 1000 * z6 * s2**2 * s5
        + 3125 * s5**2
    )


def wilson_delta_prime_poly(vs=("z6", "s2", "sigma5")) -> MultiPoly:
    z6, s2, s5 = (MultiPoly.var(vs, v) for v in vs)
    return (
        z6**6 * s2**2 * 64
        + z6**4 * s2**3 * 96
        + z6**2 * s2**4 * 48
        - z6**5 * s5 * 256
        + s2**5 * 8
        - z6**3 * s2 * s5 * 400
        - z6 * s2**2 * s5 * 1000
        + s5 * s5 * 3125
    )


def _wilson(p) -> tuple:
    if isinstance(p, WilsonPoint):
        return Fraction(p.z6), Fraction(p.s2), Fraction(p.sigma5)
    a, b, c = p
    return Fraction(a), Fraction(b), Fraction(c)


# -- the duplicate-(g,h) locus ----------------------------------------------------


def on_shimura_X6(g, h) -> bool:
    """32 h^2 - 4 g^2 h - g^5 = 0: the locus where two (g,h) share invariants."""
    g, h = Fraction(g), Fraction(h)
    return 32 * h * h - 4 * g * g * h - g**5 == 0


def duplicate_partner(g, h) -> Optional[tuple[Fraction, Fraction]]:
    """The second (g', h') with the same invariants, when it exists.

    Nonempty iff (g, h) lies on the duplicate locus with g not in {0, -1/8};
    then (g', h') = (-g/(8g+1), (g^3+2h)/(2(8g+1)^3)).
    """
    g, h = Fraction(g), Fraction(h)
    if not on_shimura_X6(g, h):
        return None
    if g == 0 or g == Fraction(-1, 8):
        return None
    gp = -g / (8 * g + 1)
    hp = (g**3 + 2 * h) / (2 * (8 * g + 1) ** 3)
    return (gp, hp)


def duplicate_condition_value(u: Fraction) -> Fraction:
    """-(43u^2 + 22u + 43): must be a square for a rational duplicate pair.

    Negative-definite over the reals, so never a square over Q or Q(sqrt5);
    the classifier relies on this to never report an ambiguous (g, h).
    """
    u = Fraction(u)
    return -(43 * u * u + 22 * u + 43)


def x6_point(u: Fraction) -> tuple[Fraction, Fraction]:
    """The parametrization u -> ((u^2-1)/8, (u-1)^2 (u+1)^3 / 1024) of the locus."""
    u = Fraction(u)
    return (Fraction(u * u - 1, 8), (u - 1) ** 2 * (u + 1) ** 3 / 1024)


# -- classification ---------------------------------------------------------------


@dataclass(frozen=True)
class RM5Class:
    """Outcome of the classifier: one case tag plus the evaluated conditions."""

    tag: str  # "1", "1a", "1b", "1c", "2", "3", "4", "5", "6", or "none"
    conditions: tuple  # of (description, value-or-bool)
    witness: dict = field(default_factory=dict)
    ic: Optional[IgusaClebsch] = None

    def failed_condition(self) -> Optional[str]:
        if self.tag != "none":
            return None
        for desc, val in self.conditions:
            if val is False:
                return desc
        return self.conditions[-1][0] if self.conditions else None


def _norm_condition(value: Fraction, fld: str) -> tuple[bool, Optional[tuple]]:
    if fld == FIELD_Q5:
        return True, None
    if value == 0:
        return False, None
    if is_norm_from_sqrt5(value):
        return True, solve_norm_equation(value)
    return False, None


def classify(point, fld: str = FIELD_Q) -> RM5Class:
    """Dispatch on MNPoint / SurfacePoint / IgusaClebsch."""
    if isinstance(point, MNPoint):
        return classify_mn(point.m, point.n, fld)
    if isinstance(point, SurfacePoint):
        return classify_zgh(point, fld)
    if isinstance(point, IgusaClebsch):
        return classify_ic(point, fld)
    if isinstance(point, tuple) and len(point) == 2:
        return classify_mn(point[0], point[1], fld)
    raise Rm5Error(f"cannot classify {type(point).__name__}")


def classify_mn(m: MN, n: MN, fld: str = FIELD_Q) -> RM5Class:
    """Classify a point of the rational (m, n) chart.

    Precedence on overlaps: not-a-curve, then the z = 0 family (case 4), then
    the singular-conic family (case 3), then the generic case 1a.
    """
    if isinstance(m, QuadExtElem) or isinstance(n, QuadExtElem):
        return _classify_mn_quad(m, n, fld)
    m, n = Fraction(m), Fraction(n)
    q = m * m - 5 * n * n
    e = q - 5
    conds: list = []
    surf = mn_to_zgh(MNPoint(m, n))
    conds.append(("h != 0 (I10 nonzero)", surf.h != 0))
    if surf.h == 0:
        return RM5Class("none", tuple(conds), {"g": surf.g, "h": surf.h})
    ic = ic_from_mn(m, n, fld)
    if n == 0 or q == 0 or q == 5:
        # z = 0: the one-parameter family with an involution (case 4)
        mm = _case4_parameter(m, n, q)
        conds.append(("z = 0 family parameter", mm))
        return RM5Class("4", tuple(conds), {"m": mm, "g": surf.g, "h": surf.h}, ic)
    quintic = (
        8 * m**5 - 80 * m**3 * n * n + 200 * m * n**4
        - 85 * m**4 + 850 * m * m * n * n - 2125 * n**4
        - 40 * m**3 + 200 * m * n * n + 1890 * m * m - 9450 * n * n - 9261
    )
    conds.append(("n(m^2-5n^2)(m^2-5n^2-5) != 0", n * q * e != 0))
    if e == 0:
        return RM5Class("none", tuple(conds), {"g": surf.g})
    conds.append(("8h - 9g^2 != 0 (degree-5 condition)", quintic != 0))
    if quintic == 0:
        sq = -3 * (128 * surf.g + 9)
        ok = is_square(sq) if fld == FIELD_Q else _square_in_field(sq, fld)
        conds.append(("-3(128g+9) is a square", ok))
        tag = "3" if ok else "none"
        return RM5Class(tag, tuple(conds), {"g": surf.g}, ic)
    ok, witness = _norm_condition(e, fld)
    conds.append(("m^2 - 5n^2 - 5 is a norm from k(sqrt5)", ok))
    if not ok:
        return RM5Class("none", tuple(conds), {"e": e})
    w = {"e": e}
    if witness is not None:
        w["norm_witness"] = witness
    return RM5Class("1a", tuple(conds), w, ic)


def _case4_parameter(m: Fraction, n: Fraction, q: Fraction):
    """Parameter of the z = 0 family: m itself when n = 0, else the point with
    m^2 = 30g + 9 = q (q = 0 -> m = 0 chart point; q = 5 -> m = sqrt5)."""
    if n == 0:
        return m
    if q == 0:
        return Fraction(0)
    if q == 5:
        return QuadExtElem(0, 1, 5)
    raise Rm5Error("not on the z = 0 family")  # pragma: no cover


def _classify_mn_quad(m, n, fld: str) -> RM5Class:
    m = m if isinstance(m, QuadExtElem) else QuadExtElem(Fraction(m), 0, 5)
    n = n if isinstance(n, QuadExtElem) else QuadExtElem(Fraction(n), 0, 5)
    conds = []
    if fld != FIELD_Q5:
        conds.append(("irrational chart point needs the sqrt5 field", False))
        return RM5Class("none", tuple(conds))
    if not n.is_zero() or not (m * m).is_rational():
        raise Rm5Error("only m in Q or m = a*sqrt5 with n = 0 is supported")
    ic = ic_from_mn(m, n, fld)
    conds.append(("z = 0 family parameter", True))
    return RM5Class("4", tuple(conds), {"m": m}, ic)


def classify_zgh(p: SurfacePoint, fld: str = FIELD_Q) -> RM5Class:
    conds: list = []
    g, h, z = p.g, p.h, p.z
    conds.append(("h != 0 (I10 nonzero)", h != 0))
    if h == 0:
        return RM5Class("none", tuple(conds))
    ic = ic_from_gh(g, h, fld)
    if g in (Fraction(-3, 10), Fraction(-2, 15)):
        # z^2 = (4/3125)(3125h - c)^2 with c = 27 resp. 2
        c = 27 if g == Fraction(-3, 10) else 2
        if z == 0:
            conds.append(("z = 0 at the excluded g", True))
            mm = Fraction(0) if g == Fraction(-3, 10) else QuadExtElem(0, 1, 5)
            return RM5Class("4", tuple(conds), {"m": mm, "g": g, "h": h}, ic)
        conds.append(("sqrt5 in the field (z != 0 at the excluded g)", fld == FIELD_Q5))
        if fld != FIELD_Q5:
            return RM5Class("none", tuple(conds))
        exceptional = {
            Fraction(-3, 10): (Fraction(0), Fraction(81, 800), Fraction(27, 3125)),
            Fraction(-2, 15): (Fraction(0), Fraction(1, 50), Fraction(2, 3125)),
        }[g]
        conds.append(("h outside the exceptional set", h not in exceptional))
        if h in exceptional:
            if h == exceptional[1]:
                sq = -3 * (128 * g + 9)
                ok = _square_in_field(sq, fld)
                conds.append(("-3(128g+9) is a square", ok))
                return RM5Class("3" if ok else "none", tuple(conds), {"g": g}, ic)
            return RM5Class("none", tuple(conds))
        tag = "1b" if g == Fraction(-3, 10) else "1c"
        return RM5Class(tag, tuple(conds), {"h": h}, ic)
    if z == 0:
        # the n = 0 family: g = (mu^2-9)/30, h = (mu-2)^2 (mu+3)^3 / 12500
        q = 30 * g + 9
        mu = rational_sqrt(q)
        if mu is None:
            conds.append(("30g + 9 is a square (z = 0 family)", False))
            return RM5Class("none", tuple(conds))
        for cand in (mu, -mu):
            if (cand - 2) ** 2 * (cand + 3) ** 3 / 12500 == h:
                conds.append(("z = 0 family parameter", True))
                return RM5Class("4", tuple(conds), {"m": cand, "g": g, "h": h}, ic)
        conds.append(("h matches the z = 0 parametrization", False))
        return RM5Class("none", tuple(conds))
    if 8 * h == 9 * g * g:
        sq = -3 * (128 * g + 9)
        ok = _square_in_field(sq, fld)
        conds.append(("-3(128g+9) is a square", ok))
        return RM5Class("3" if ok else "none", tuple(conds), {"g": g}, ic)
    ok, witness = _norm_condition(30 * g + 4, fld)
    conds.append(("30g + 4 is a norm from k(sqrt5)", ok))
    if not ok:
        return RM5Class("none", tuple(conds), {"e": 30 * g + 4})
    w = {"e": 30 * g + 4}
    if witness is not None:
        w["norm_witness"] = witness
    return RM5Class("1", tuple(conds), w, ic)


def _square_in_field(v: Fraction, fld: str) -> bool:
    if fld == FIELD_Q5:
        return qe_sqrt(QuadExtElem(Fraction(v), 0, 5)) is not None
    return is_square(v)


def classify_ic(ic: IgusaClebsch, fld: str = FIELD_Q) -> RM5Class:
    """Classify an invariant tuple defined over the tagged field.

    First the special patterns ((0:0:0:1), then (8:1:3:s) covering cases 5
    and 2), then inversion of the (g, h) chart up to the duplicate ambiguity,
    which over Q and Q(sqrt5) provably never bites.
    """
    vals = ic.tuple()
    if any(isinstance(v, QuadExtElem) and not v.is_rational() for v in vals):
        raise Rm5Error("classification of irrational invariant tuples is unsupported")
    i2, i4, i6, i10 = (
        Fraction(v.rational_value()) if isinstance(v, QuadExtElem) else Fraction(v) for v in vals
    )
    conds: list = []
    conds.append(("I10 != 0", i10 != 0))
    if i10 == 0:
        return RM5Class("none", tuple(conds))
    if i2 == 0 and i4 == 0 and i6 == 0:
        conds.append(("sqrt5 in the field", fld == FIELD_Q5))
        tag = "6" if fld == FIELD_Q5 else "none"
        return RM5Class(tag, tuple(conds), {}, ic)
    if i2 != 0:
        lam = i2 / 8
        if i4 == lam * lam and i6 == 3 * lam**3:
            s = i10 / lam**5
            conds.append(("matches (8 : 1 : 3 : s)", True))
            if s == Fraction(8, 3125):
                conds.append(("s = 8/3125 (singular conic point)", True))
                return RM5Class("5", tuple(conds), {"s": s}, ic)
            sq_ok = _square_in_field(s * (3125 * s - 8), fld)
            conds.append(("s(3125s - 8) is a square", sq_ok))
            norm_ok, witness = _norm_condition(2 * s, fld)
            conds.append(("2s is a norm from k(sqrt5)", norm_ok))
            if sq_ok and norm_ok:
                w = {"s": s}
                if witness is not None:
                    w["norm_witness"] = witness
                return RM5Class("2", tuple(conds), w, ic)
            return RM5Class("none", tuple(conds), {"s": s}, ic)
    # invert the (g, h) chart: I2 = lam(24g+6), I4 = lam^2 9g^2
    for g, lam in _gh_candidates(i2, i4):
        h6 = (i6 / lam**3 - 81 * g**3 - 18 * g * g) / 36
        if i10 != lam**5 * 4 * h6 * h6:
            continue
        conds.append((f"matches the (g, h) chart at g = {g}", True))
        zz = ek_rhs(g, h6)
        zroot = _sqrt_in_field(zz, fld)
        conds.append(("z^2 = ek_rhs(g, h) solvable in the field", zroot is not None))
        if zroot is None:
            # k-rational invariants whose surface point is not k-rational
            return RM5Class("none", tuple(conds), {"g": g, "h": h6}, ic)
        if isinstance(zroot, QuadExtElem) and not zroot.is_rational():
            sub = classify_zgh_quadz(g, h6, fld)
            conds.extend(sub.conditions)
            return RM5Class(sub.tag, tuple(conds), sub.witness, ic)
        z = zroot.rational_value() if isinstance(zroot, QuadExtElem) else zroot
        sub = classify_zgh(SurfacePoint(z, g, h6), fld)
        conds.extend(sub.conditions)
        return RM5Class(sub.tag, tuple(conds), sub.witness, ic)
    conds.append(("matches some chart or special pattern", False))
    return RM5Class("none", tuple(conds), {}, ic)


def classify_zgh_quadz(g: Fraction, h: Fraction, fld: str) -> RM5Class:
    """The surface point has z in sqrt5*Q (only at the excluded g values)."""
    conds = [("z rational only over Q(sqrt5)", fld == FIELD_Q5)]
    if fld != FIELD_Q5:
        return RM5Class("none", tuple(conds))
    if g == Fraction(-3, 10):
        exceptional = (Fraction(0), Fraction(81, 800), Fraction(27, 3125))
        tag = "1b"
    elif g == Fraction(-2, 15):
        exceptional = (Fraction(0), Fraction(1, 50), Fraction(2, 3125))
        tag = "1c"
    else:
        conds.append(("irrational z only arises at the excluded g", False))
        return RM5Class("none", tuple(conds))
    conds.append(("h outside the exceptional set", h not in exceptional))
    if h in exceptional:
        return RM5Class("none", tuple(conds))
    return RM5Class(tag, tuple(conds), {"g": g, "h": h})


def _gh_candidates(i2: Fraction, i4: Fraction):
    """Solve I2 = lam(24g + 6), I4 = 9 lam^2 g^2 for (g, lam), exactly.

    (576 I4 - 9 I2^2) g^2 + 288 I4 g + 36 I4 = 0; two roots mean the duplicate
    locus, which over Q and Q(sqrt5) cannot both be rational curve points.
    """
    out = []
    if i4 == 0:
        if i2 != 0:
            out.append((Fraction(0), i2 / 6))
        return out
    a = 576 * i4 - 9 * i2 * i2
    b = 288 * i4
    c = 36 * i4
    if a == 0:
        if b != 0:
            g = -c / b
            lam = i2 / (24 * g + 6) if 24 * g + 6 != 0 else None
            if lam:
                out.append((g, lam))
        return out
    disc = b * b - 4 * a * c
    root = rational_sqrt(disc)
    if root is None:
        return out
    for sgn in (1, -1):
        g = (-b + sgn * root) / (2 * a)
        if 24 * g + 6 == 0:
            continue
        lam = i2 / (24 * g + 6)
        if lam != 0 and i4 == 9 * lam * lam * g * g:
            out.append((g, lam))
    # deterministic order; both surviving would be the duplicate ambiguity
    return out


def _sqrt_in_field(v: Fraction, fld: str):
    r = rational_sqrt(v) if v >= 0 else None
    if r is not None:
        return r
    if fld == FIELD_Q5:
        return qe_sqrt(QuadExtElem(Fraction(v), 0, 5))
    return None


def galois_necessary_check(model: SexticModel) -> bool:
    """Necessary condition for the degree-5 symmetry group of the model:
    disc(f) must be a square in the base field.  Necessary only."""
    d = model.discriminant()
    if isinstance(d, QuadExtElem):
        if model.field == FIELD_Q5:
            return qe_sqrt(d) is not None
        d = d.rational_value()
    if model.field == FIELD_Q5:
        return _square_in_field(Fraction(d), FIELD_Q5)
    return is_square(Fraction(d))
