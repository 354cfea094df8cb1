"""Igusa-Clebsch and Clebsch invariants of genus-2 sextic models.

The Clebsch invariants A, B, C, D are computed through classical
transvectants of the binary sextic (Mestre's construction); the linear
relations I2 = -120 A, I4 = 90(-8A^2+75B), I6 = 540(16A^3-200AB+375C),
I10 = -162(384A^5-6000A^3B+18750AB^2-10000A^2C+37500BC+28125D) convert to
Igusa-Clebsch invariants normalized so that I10 equals the discriminant of
the binary sextic exactly.  The arithmetic is generic: coefficients may be
Fraction, QuadExtElem, or MultiPoly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import unipoly
from .arith import factor, rational_nth_root
from .errors import DegenerateCurveError, Rm5Error
from .multipoly import MultiPoly
from .quadfield import QuadExtElem, qe_nth_root

FIELD_Q = "rational"
FIELD_Q5 = "rational-sqrt5"

Element = Union[Fraction, QuadExtElem, MultiPoly]

WEIGHTS = (1, 2, 3, 5)


def _as_element(x) -> Element:
    if isinstance(x, (QuadExtElem, MultiPoly)):
        return x
    return Fraction(x)


def _is_zero(x) -> bool:
    if isinstance(x, MultiPoly):
        return x.is_zero()
    if isinstance(x, QuadExtElem):
        return x.is_zero()
    return x == 0


# -- sextic models -------------------------------------------------------------


class SexticModel:
    """y^2 = f(x) with deg f in {5, 6}; coefficients c0..c6 over Q or Q(sqrt5)."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence, field: str = FIELD_Q):
        cs = [_as_element(c) for c in coeffs]
        if len(cs) > 7:
            raise Rm5Error("a sextic model has at most 7 coefficients")
        cs += [Fraction(0)] * (7 - len(cs))
        if field not in (FIELD_Q, FIELD_Q5):
            raise Rm5Error(f"unknown field tag {field!r}")
        if field == FIELD_Q and any(isinstance(c, QuadExtElem) and not c.is_rational() for c in cs):
            raise Rm5Error("irrational coefficient in a rational model")
        if _is_zero(cs[6]) and _is_zero(cs[5]):
            raise Rm5Error("degree of f must be 5 or 6")
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "field", field)

    def __setattr__(self, *_):
        raise AttributeError("SexticModel is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, SexticModel)
            and self.field == other.field
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __repr__(self):
        return f"SexticModel({list(self.coeffs)!r}, field={self.field!r})"

    def degree(self) -> int:
        return 6 if not _is_zero(self.coeffs[6]) else 5

    def discriminant(self):
        """Discriminant of the binary sextic (= I10)."""
        return unipoly.discriminant_sextic(list(self.coeffs))

    def is_genus2(self) -> bool:
        return not _is_zero(self.discriminant())

    def evaluate(self, x):
        return unipoly.evaluate(list(self.coeffs), x)

    # model transformations, used by the invariance tests
    def translate(self, r) -> "SexticModel":
        """x -> x + r."""
        r = _as_element(r)
        out = [_as_element(0)] * 7
        for i, c in enumerate(self.coeffs):
            for k in range(i + 1):  # c * (x + r)^i
                out[k] = out[k] + c * math.comb(i, k) * r ** (i - k)
        return SexticModel(out, self.field)

    def scale_x(self, r) -> "SexticModel":
        """x -> r x (r != 0)."""
        r = _as_element(r)
        if _is_zero(r):
            raise Rm5Error("scale factor must be nonzero")
        return SexticModel([c * r**i for i, c in enumerate(self.coeffs)], self.field)

    def invert_x(self) -> "SexticModel":
        """x -> 1/x on the binary sextic: reverses the coefficients."""
        return SexticModel(list(self.coeffs)[::-1], self.field)

    def scale_f(self, r) -> "SexticModel":
        """f -> r^2 f (an isomorphic model y -> r y)."""
        r = _as_element(r)
        if _is_zero(r):
            raise Rm5Error("scale factor must be nonzero")
        return SexticModel([c * r * r for c in self.coeffs], self.field)


# -- transvectants of binary forms ----------------------------------------------

# a binary form of order n is a fixed-length list of n+1 coefficients,
# index i holding the coefficient of x^i z^(n-i)


def _diff_x(c: list, order: int) -> list:
    return [c[i + 1] * (i + 1) for i in range(order)]


def _diff_z(c: list, order: int) -> list:
    return [c[i] * (order - i) for i in range(order)]


def _iter_diff(c: list, order: int, dx: int, dz: int) -> list:
    out, n = list(c), order
    for _ in range(dx):
        out, n = _diff_x(out, n), n - 1
    for _ in range(dz):
        out, n = _diff_z(out, n), n - 1
    return out


def _form_mul(p: list, q: list) -> list:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if _is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def transvectant(f: list, m: int, g: list, n: int, r: int) -> list:
    """r-th transvectant of binary forms of orders m and n (order m+n-2r)."""
    if r > m or r > n:
        raise Rm5Error("transvectant index exceeds a form order")
    pref = Fraction(
        math.factorial(m - r) * math.factorial(n - r), math.factorial(m) * math.factorial(n)
    )
    total = [Fraction(0)] * (m + n - 2 * r + 1)
    for k in range(r + 1):
        left = _iter_diff(f, m, r - k, k)
        right = _iter_diff(g, n, k, r - k)
        prod = _form_mul(left, right)
        sign = -1 if k % 2 else 1
        coeff = pref * math.comb(r, k) * sign
        for i, v in enumerate(prod):
            total[i] = total[i] + v * coeff
    return total


@dataclass(frozen=True)
class ClebschInv:
    a: Element
    b: Element
    c: Element
    d: Element


def clebsch_invariants(model: SexticModel) -> ClebschInv:
    """Clebsch (A, B, C, D) of the binary sextic via transvectants."""
    return clebsch_of_form(list(model.coeffs))


def clebsch_of_form(c7: list) -> ClebschInv:
    f = list(c7)
    if len(f) != 7:
        raise Rm5Error("expected 7 coefficients of a binary sextic")
    i4 = transvectant(f, 6, f, 6, 4)  # order 4
    delta = transvectant(i4, 4, i4, 4, 2)  # order 4
    y1 = transvectant(f, 6, i4, 4, 4)  # order 2
    y2 = transvectant(i4, 4, y1, 2, 2)  # order 2
    y3 = transvectant(i4, 4, y2, 2, 2)  # order 2
    a = transvectant(f, 6, f, 6, 6)[0]
    b = transvectant(i4, 4, i4, 4, 4)[0]
    c = transvectant(i4, 4, delta, 4, 4)[0]
    d = transvectant(y3, 2, y1, 2, 2)[0]
    return ClebschInv(a, b, c, d)


# -- Igusa-Clebsch tuples --------------------------------------------------------


class IgusaClebsch:
    """(I2 : I4 : I6 : I10) in weighted projective space, weights (1, 2, 3, 5)."""

    __slots__ = ("i2", "i4", "i6", "i10", "field")

    def __init__(self, i2, i4, i6, i10, field: str = FIELD_Q):
        vals = tuple(_as_element(v) for v in (i2, i4, i6, i10))
        if all(_is_zero(v) for v in vals):
            raise Rm5Error("invariants must not be all zero")
        object.__setattr__(self, "i2", vals[0])
        object.__setattr__(self, "i4", vals[1])
        object.__setattr__(self, "i6", vals[2])
        object.__setattr__(self, "i10", vals[3])
        object.__setattr__(self, "field", field)

    def __setattr__(self, *_):
        raise AttributeError("IgusaClebsch is immutable")

    def tuple(self) -> tuple:
        return (self.i2, self.i4, self.i6, self.i10)

    def __repr__(self):
        return f"IgusaClebsch{self.tuple()!r}"

    def __eq__(self, other):
        return isinstance(other, IgusaClebsch) and all(
            a == b for a, b in zip(self.tuple(), other.tuple())
        )

    def scale(self, lam) -> "IgusaClebsch":
        lam = _as_element(lam)
        return IgusaClebsch(
            self.i2 * lam,
            self.i4 * lam * lam,
            self.i6 * lam**3,
            self.i10 * lam**5,
            self.field,
        )


def ic_from_clebsch(cl: ClebschInv, field: str = FIELD_Q) -> IgusaClebsch:
    a, b, c, d = cl.a, cl.b, cl.c, cl.d
    i2 = a * -120
    i4 = (a * a * -8 + b * 75) * 90
    i6 = (a * a * a * 16 - a * b * 200 + c * 375) * 540
    i10 = (
        a**5 * 384
        - a**3 * b * 6000
        + a * b * b * 18750
        - a * a * c * 10000
        + b * c * 37500
        + d * 28125
    ) * -162
    return IgusaClebsch(i2, i4, i6, i10, field)


def clebsch_from_ic(ic: IgusaClebsch) -> ClebschInv:
    """Invert the triangular linear system exactly."""
    a = ic.i2 * Fraction(-1, 120)
    b = (ic.i4 + a * a * 720) * Fraction(1, 6750)
    c = (ic.i6 - a * a * a * 8640 + a * b * 108000) * Fraction(1, 202500)
    d = (
        ic.i10 * Fraction(-1, 162)
        - (a**5 * 384 - a**3 * b * 6000 + a * b * b * 18750 - a * a * c * 10000 + b * c * 37500)
    ) * Fraction(1, 28125)
    return ClebschInv(a, b, c, d)


def igusa_clebsch_from_sextic(model: SexticModel) -> IgusaClebsch:
    """Invariants of y^2 = f(x); raises on repeated roots (disc = 0)."""
    ic = ic_from_clebsch(clebsch_invariants(model), model.field)
    if _is_zero(ic.i10):
        raise DegenerateCurveError("sextic has repeated roots (discriminant zero)")
    return ic


# -- invariants straight from moduli coordinates ---------------------------------


def ic_from_gh(g, h, field: str = FIELD_Q) -> IgusaClebsch:
    """(24g + 6 : 9g^2 : 81g^3 + 18g^2 + 36h : 4h^2); works symbolically too."""
    g, h = _as_element(g), _as_element(h)
    return IgusaClebsch(
        g * 24 + _one_like(g) * 6,
        g * g * 9,
        g**3 * 81 + g * g * 18 + h * 36,
        h * h * 4,
        field,
    )


def _one_like(x: Element):
    if isinstance(x, MultiPoly):
        return MultiPoly.const(x.vars, 1)
    if isinstance(x, QuadExtElem):
        return QuadExtElem(1, 0, x.d)
    return Fraction(1)


def ic_from_mn(m, n, field: str = FIELD_Q) -> IgusaClebsch:
    """The (m, n)-chart invariant formulas (degree <= 6 polynomials)."""
    m, n = _as_element(m), _as_element(n)
    one = _one_like(m)
    m2, n2 = m * m, n * n
    i2 = (m2 * 2 - n2 * 10 - one * 3) * 20
    i4 = (m2 * -1 + n2 * 5 + one * 9) ** 2 * 25
    i6 = (
        m2**3 * -75
        + m2 * m2 * n2 * 1125
        - m2 * n2 * n2 * 5625
        + n2**3 * 9375
        - m2 * m2 * m * 72
        + m2 * m * n2 * 720
        - m * n2 * n2 * 1800
        + m2 * m2 * 1165
        - m2 * n2 * 11650
        + n2 * n2 * 29125
        + m2 * m * 360
        - m * n2 * 1800
        - m2 * 5985
        + n2 * 29925
        + one * 6399
    ) * -5
    i10 = (
        m2 * m2 * m
        - m2 * m * n2 * 10
        + m * n2 * n2 * 25
        + m2 * m2 * 5
        - m2 * n2 * 50
        + n2 * n2 * 125
        - m2 * m * 5
        + m * n2 * 25
        - m2 * 45
        + n2 * 225
        + one * 108
    ) ** 2 * 8
    return IgusaClebsch(i2, i4, i6, i10, field)


def ic_from_wilson(z6, s2, sigma5, field: str = FIELD_Q) -> IgusaClebsch:
    """Invariants from the weight-(1,2,5) moduli chart; sigma5 must be nonzero."""
    z6, s2, sigma5 = _as_element(z6), _as_element(s2), _as_element(sigma5)
    if _is_zero(sigma5):
        raise Rm5Error("sigma5 = 0 does not correspond to a curve")
    i2 = s2 * -2 + z6 * z6 * 2
    i4 = (s2 + z6 * z6 * 2) ** 2 * Fraction(1, 16)
    i6 = (z6 * sigma5 * 9 - i4 * (s2 * 3 - z6 * z6 * 2) * 4) * Fraction(1, 16)
    i10 = sigma5 * sigma5 * Fraction(1, 1024)
    return IgusaClebsch(i2, i4, i6, i10, field)


# -- weighted projective equality -------------------------------------------------


def _ratio(y, x):
    if isinstance(x, MultiPoly) or isinstance(y, MultiPoly):
        raise Rm5Error("use cross-multiplied identities for symbolic entries")
    return y / x


def weighted_equal(x: IgusaClebsch, y: IgusaClebsch, field: Optional[str]) -> bool:
    """Is y = (lam*I2, lam^2*I4, lam^3*I6, lam^5*I10) for some lam != 0?

    With `field` equal to FIELD_Q or FIELD_Q5 the scalar lam is required to
    exist in that field; `field=None` asks for equality over the complex
    numbers.  Whenever at least two slots are nonzero, the weights (1,2,3,5)
    determine lam exactly, so the two notions coincide; they differ only for
    single-slot patterns, where the field test requires a w-th root.
    """
    xs, ys = x.tuple(), y.tuple()
    pattern = [not _is_zero(v) for v in xs]
    if pattern != [not _is_zero(v) for v in ys]:
        return False
    nz = [i for i, p in enumerate(pattern) if p]
    if len(nz) >= 2:
        lam = _lambda_from_slots(xs, ys, nz)
        if lam is None or _is_zero(lam):
            return False
        return all(ys[i] == xs[i] * lam ** WEIGHTS[i] for i in nz)
    i = nz[0]
    if field is None:
        return True  # lam^w takes any nonzero complex value
    r = _ratio(ys[i], xs[i])
    return _field_nth_root(r, WEIGHTS[i], field) is not None


def weighted_equal_cc(x: IgusaClebsch, y: IgusaClebsch) -> bool:
    return weighted_equal(x, y, None)


def _lambda_from_slots(xs, ys, nz):
    """Solve for lam using the first two nonzero slots; weights (1,2,3,5)."""
    ratios = {i: _ratio(ys[i], xs[i]) for i in nz}
    i = nz[0]
    w0 = WEIGHTS[i]
    if w0 == 1:
        return ratios[i]
    j = nz[1]
    w1 = WEIGHTS[j]
    # gcd of any two distinct weights from (2,3,5) is 1
    if (w0, w1) == (2, 3):
        return ratios[j] / ratios[i]
    if (w0, w1) == (2, 5):
        lam = ratios[j] / ratios[i] ** 2  # lam^5 / lam^4
        return lam
    if (w0, w1) == (3, 5):
        lam = ratios[i] ** 2 / ratios[j]  # lam^6 / lam^5
        return lam
    raise Rm5Error(f"unexpected weight pattern {(w0, w1)}")  # pragma: no cover


def _field_nth_root(r, k: int, field: str):
    if isinstance(r, QuadExtElem):
        if field == FIELD_Q:
            if not r.is_rational():
                return None
            r = r.rational_value()
        else:
            return qe_nth_root(r, k)
    if field == FIELD_Q5:
        return qe_nth_root(QuadExtElem(Fraction(r), 0, 5), k)
    return rational_nth_root(Fraction(r), k)


def ic_weighted_equal(x: IgusaClebsch, y: IgusaClebsch, field: str = FIELD_Q) -> bool:
    """Spec-facing alias: equality in the weighted projective space over `field`."""
    return weighted_equal(x, y, field)


# -- canonical integral representative (for printing and golden files) ------------


def normalize_ic(ic: IgusaClebsch) -> IgusaClebsch:
    """Scale by rational lam so entries are integral with no common weighted
    reduction and the first nonzero odd-weight entry is positive."""
    entries = ic.tuple()
    if any(isinstance(v, QuadExtElem) and not v.is_rational() for v in entries):
        return _normalize_ic_quad(ic)
    vals = [Fraction(v.rational_value()) if isinstance(v, QuadExtElem) else Fraction(v) for v in entries]
    primes: set[int] = set()
    for v in vals:
        for part in (v.numerator, v.denominator):
            if part not in (0, 1, -1):
                primes.update(factor(part).primes())
    lam = Fraction(1)
    for p in sorted(primes):
        exps = []
        for v, w in zip(vals, WEIGHTS):
            if v == 0:
                continue
            vp = _fraction_valuation(v, p)
            exps.append(-(vp // w))  # = ceil(-vp / w)
        e = max(exps)
        lam *= Fraction(p) ** e
    scaled = [v * lam**w for v, w in zip(vals, WEIGHTS)]
    for v, w in zip(scaled, WEIGHTS):
        if v != 0 and w % 2 == 1:
            if v < 0:
                scaled = [s * (-1) ** wt for s, wt in zip(scaled, WEIGHTS)]
            break
    return IgusaClebsch(*scaled, field=ic.field)


def _fraction_valuation(v: Fraction, p: int) -> int:
    e = 0
    num, den = v.numerator, v.denominator
    while num % p == 0:
        num //= p
        e += 1
    while den % p == 0:
        den //= p
        e -= 1
    return e


def _normalize_ic_quad(ic: IgusaClebsch) -> IgusaClebsch:
    """Over Q(sqrt5) just clear rational denominators and fix the sign."""
    parts: list[Fraction] = []
    for v in ic.tuple():
        v = v if isinstance(v, QuadExtElem) else QuadExtElem(Fraction(v), 0, 5)
        parts.extend((v.a, v.b))
    den = 1
    for q in parts:
        den = den * q.denominator // math.gcd(den, q.denominator)
    lam = Fraction(den)
    out = ic.scale(lam)
    lead = next(v for v in out.tuple() if not _is_zero(v))
    la = lead.a if isinstance(lead, QuadExtElem) else Fraction(lead)
    lb = lead.b if isinstance(lead, QuadExtElem) else Fraction(0)
    key = la if la != 0 else lb
    if key < 0:
        out = out.scale(-1)
    return out
