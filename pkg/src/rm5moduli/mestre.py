"""Mestre conic and cubic: construction, rational points, parametrization, models.

The conic L and cubic M attached to Clebsch invariants (A, B, C, D) decide
whether a genus-2 curve with those invariants is defined over the base field
(conic has a rational point) and, when it is, produce a Weierstrass model
(cubic restricted to a parametrization of the conic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from . import unipoly
from .arith import (
    INFINITY,
    hilbert_symbol,
    hint_primes_from,
    rational_sqrt,
    rational_square_class,
    relevant_places,
    solve_z2_eq_axx_byy,
)
from .errors import DegenerateCurveError, Rm5Error, SingularInputError
from .invariants import FIELD_Q, FIELD_Q5, ClebschInv, SexticModel
from .multipoly import MultiPoly
from .quadfield import QuadExtElem

Entry = Union[Fraction, QuadExtElem, MultiPoly]


def _is_zero(x) -> bool:
    if isinstance(x, MultiPoly):
        return x.is_zero()
    if isinstance(x, QuadExtElem):
        return x.is_zero()
    return x == 0


class TernaryQF:
    """Symmetric 3x3 Gram matrix; Q(x) = x^T G x, so cross terms are 2 G_ij."""

    __slots__ = ("gram",)

    def __init__(self, gram: Sequence[Sequence]):
        g = [list(row) for row in gram]
        if len(g) != 3 or any(len(r) != 3 for r in g):
            raise Rm5Error("gram matrix must be 3x3")
        for i in range(3):
            for j in range(i + 1, 3):
                if not g[i][j] == g[j][i]:
                    raise Rm5Error("gram matrix must be symmetric")
        object.__setattr__(self, "gram", tuple(tuple(row) for row in g))

    def __setattr__(self, *_):
        raise AttributeError("TernaryQF is immutable")

    @classmethod
    def diagonal(cls, a, b, c) -> "TernaryQF":
        z = Fraction(0)
        return cls([[a, z, z], [z, b, z], [z, z, c]])

    def __eq__(self, other):
        return isinstance(other, TernaryQF) and all(
            self.gram[i][j] == other.gram[i][j] for i in range(3) for j in range(3)
        )

    def __repr__(self):
        return f"TernaryQF({[list(r) for r in self.gram]!r})"

    def evaluate(self, v: Sequence):
        total = 0
        for i in range(3):
            for j in range(3):
                total = self.gram[i][j] * v[i] * v[j] + total
        return total

    def bilinear(self, u: Sequence, v: Sequence):
        total = 0
        for i in range(3):
            for j in range(3):
                total = self.gram[i][j] * u[i] * v[j] + total
        return total

    def det(self):
        g = self.gram
        return (
            g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
        )

    def is_singular(self) -> bool:
        return _is_zero(self.det())

    def scale(self, c) -> "TernaryQF":
        return TernaryQF([[e * c for e in row] for row in self.gram])

    def transform(self, cols: Sequence[Sequence]) -> "TernaryQF":
        """Congruence by the matrix whose columns are `cols`."""
        out = [[Fraction(0)] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                out[i][j] = self.bilinear(cols[i], cols[j])
        return TernaryQF(out)


def conic_discriminant(q: TernaryQF):
    """Determinant of the Gram matrix."""
    return q.det()


class TernaryCubic:
    """Sum over all ordered triples of M_ijk x_i x_j x_k, M fully symmetric."""

    __slots__ = ("coeffs",)

    _KEYS = (
        (1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 2, 2), (1, 2, 3),
        (1, 3, 3), (2, 2, 2), (2, 2, 3), (2, 3, 3), (3, 3, 3),
    )

    def __init__(self, coeffs: dict):
        store = {}
        for key, val in coeffs.items():
            skey = tuple(sorted(key))
            if skey in store and not store[skey] == val:
                raise Rm5Error(f"conflicting symmetric coefficients for {skey}")
            store[skey] = val
        for key in store:
            if key not in self._KEYS:
                raise Rm5Error(f"bad index triple {key}")
        object.__setattr__(self, "coeffs", store)

    def __setattr__(self, *_):
        raise AttributeError("TernaryCubic is immutable")

    def coefficient(self, i: int, j: int, k: int):
        return self.coeffs.get(tuple(sorted((i, j, k))), Fraction(0))

    @staticmethod
    def _multiplicity(key) -> int:
        i, j, k = key
        if i == j == k:
            return 1
        return 3 if (i == j or j == k or i == k) else 6

    def evaluate(self, v: Sequence):
        total = 0
        for key, c in self.coeffs.items():
            i, j, k = key
            total = c * self._multiplicity(key) * v[i - 1] * v[j - 1] * v[k - 1] + total
        return total

    def evaluate_poly(self, quadratics: Sequence[Sequence]) -> list:
        """Evaluate on three univariate polynomials (coefficient lists)."""
        total: list = []
        for key, c in self.coeffs.items():
            i, j, k = key
            prod = unipoly.mul(unipoly.mul(quadratics[i - 1], quadratics[j - 1]), quadratics[k - 1])
            term = unipoly.scale(prod, c * self._multiplicity(key))
            total = unipoly.add(total, term)
        return total


def mestre_conic(cl: ClebschInv) -> TernaryQF:
    """Gram matrix of Mestre's conic L for Clebsch invariants (A, B, C, D)."""
    a, b, c, d = cl.a, cl.b, cl.c, cl.d
    l11 = c * 2 + a * b * Fraction(1, 3)
    l12 = (b * b + a * c) * Fraction(2, 3)
    l13 = d
    l22 = d
    l23 = b * (b * b + a * c) * Fraction(1, 3) + c * (c * 2 + a * b * Fraction(1, 3)) * Fraction(1, 3)
    l33 = b * d * Fraction(1, 2) + c * (b * b + a * c) * Fraction(2, 9)
    return TernaryQF([[l11, l12, l13], [l12, l22, l23], [l13, l23, l33]])


def mestre_cubic(cl: ClebschInv) -> TernaryCubic:
    """Coefficients M_ijk of Mestre's cubic for Clebsch invariants (A, B, C, D)."""
    a, b, c, d = cl.a, cl.b, cl.c, cl.d
    f = Fraction
    m = {
        (1, 1, 1): (a * a * c - b * c * 6 + d * 9) * f(2, 9),
        (1, 1, 2): (b**3 * 2 + a * b * c * 4 + c * c * 12 + a * d * 3) * f(1, 9),
        (1, 1, 3): (b**3 * a + a * a * b * c * f(4, 3) + b * b * c * 4 + a * c * c * 6 + b * d * 3) * f(1, 9),
        (1, 2, 3): (b**4 * 2 + a * b * b * c * 4 + a * a * c * c * f(4, 3) + b * c * c * 4 + a * b * d * 3 + c * d * 12) * f(1, 18),
        (1, 3, 3): (
            a * b**4
            + a * a * b * b * c * f(4, 3)
            + b**3 * c * f(16, 3)
            + a * b * c * c * f(26, 3)
            + c**3 * 8
            + b * b * d * 3
            + a * c * d * 2
        ) * f(1, 18),
        (2, 2, 2): (b**4 * 3 + a * b * b * c * 6 + a * a * c * c * f(8, 3) + b * c * c * 2 - c * d * 3) * f(1, 9),
        (2, 2, 3): (b**3 * c * f(-2, 3) - a * b * c * c * f(4, 3) - c**3 * 4 + b * b * d * 9 + a * c * d * 8) * f(1, 18),
        (2, 3, 3): (b**5 + a * b**3 * c * 2 + a * a * b * c * c * f(8, 9) + b * b * c * c * f(2, 3) - b * c * d + d * d * 9) * f(1, 18),
        (3, 3, 3): (
            b**4 * c * -2
            - a * b * b * c * c * 4
            - a * a * c**3 * f(16, 9)
            - b * c**3 * f(4, 3)
            + b**3 * d * 9
            + a * b * c * d * 12
            + c * c * d * 20
        ) * f(1, 36),
    }
    m[(1, 2, 2)] = m[(1, 1, 3)]
    return TernaryCubic(m)


# -- projective points -----------------------------------------------------------


class ProjPoint3:
    """(x1 : x2 : x3), not all zero; canonical representative on construction."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        cs = [c if isinstance(c, QuadExtElem) else Fraction(c) for c in coords]
        if len(cs) != 3:
            raise Rm5Error("need three coordinates")
        if all(_is_zero(c) for c in cs):
            raise Rm5Error("projective point must be nonzero")
        object.__setattr__(self, "coords", tuple(_canonicalize(cs)))

    def __setattr__(self, *_):
        raise AttributeError("ProjPoint3 is immutable")

    def __eq__(self, other):
        return isinstance(other, ProjPoint3) and all(
            a == b for a, b in zip(self.coords, other.coords)
        )

    def __repr__(self):
        return f"ProjPoint3({list(self.coords)!r})"

    def __str__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"

    def __iter__(self):
        return iter(self.coords)


def _canonicalize(cs: list) -> list:
    if any(isinstance(c, QuadExtElem) for c in cs):
        d = next(c.d for c in cs if isinstance(c, QuadExtElem))
        qs = [c if isinstance(c, QuadExtElem) else QuadExtElem(c, 0, d) for c in cs]
        parts = [p for c in qs for p in (c.a, c.b)]
        den = 1
        for p in parts:
            den = den * p.denominator // math.gcd(den, p.denominator)
        num = 0
        for p in parts:
            num = math.gcd(num, abs(p.numerator * (den // p.denominator)))
        scale = Fraction(den, num if num else 1)
        qs = [c * scale for c in qs]
        lead = next(c for c in qs if not c.is_zero())
        key = lead.a if lead.a != 0 else lead.b
        if key < 0:
            qs = [-c for c in qs]
        return [c.rational_value() if c.is_rational() else c for c in qs]
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in cs:
        num = math.gcd(num, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, num if num else 1)
    out = [c * scale for c in cs]
    lead = next(c for c in out if c != 0)
    if lead < 0:
        out = [-c for c in out]
    return out


# -- solvability over Q (Hasse-Minkowski) and point search -------------------------


def _diagonalize(q: TernaryQF) -> tuple[list[Fraction], list[list[Fraction]]]:
    """(d1, d2, d3) and basis columns T with T^t G T = diag(d)."""
    g = [[Fraction(e) for e in row] for row in q.gram]
    basis = [
        [Fraction(1), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1)],
    ]

    def val(u, v):
        return sum(g[i][j] * u[i] * v[j] for i in range(3) for j in range(3))

    cols: list[list[Fraction]] = []
    pool = list(basis)
    for _ in range(3):
        # pick a pool vector with nonzero value, possibly after mixing
        chosen = None
        for v in pool:
            if val(v, v) != 0:
                chosen = v
                break
        if chosen is None:
            for i in range(len(pool)):
                for j in range(i + 1, len(pool)):
                    w = [a + b for a, b in zip(pool[i], pool[j])]
                    if val(w, w) != 0:
                        chosen = w
                        pool[i] = w
                        break
                if chosen is not None:
                    break
        if chosen is None:
            raise SingularInputError("form is singular (radical is nontrivial)")
        cols.append(chosen)
        qv = val(chosen, chosen)
        newpool = []
        for v in pool:
            if v is chosen:
                continue
            bv = val(chosen, v)
            newpool.append([a - b * bv / qv for a, b in zip(v, chosen)])
        pool = newpool
    diag = [val(c, c) for c in cols]
    return diag, cols


def conic_is_solvable(q: TernaryQF, hints: Iterable = ()) -> bool:
    return _solvability_certificate(q, hints) is None


def _solvability_certificate(q: TernaryQF, hints: Iterable = ()):
    """None when solvable; otherwise a place with Hilbert symbol -1."""
    if q.is_singular():
        raise SingularInputError("conic is singular")
    diag, _ = _diagonalize(q)
    hp = hint_primes_from(hints)
    d1, d2, d3 = diag
    a = -d1 / d3
    b = -d2 / d3
    for place in relevant_places([a, b], hp):
        if hilbert_symbol(a, b, place) == -1:
            return place
    return None


def conic_rational_point(
    q: TernaryQF, hints: Iterable = (), search_bound: int = 24
) -> tuple[Optional[ProjPoint3], Optional[object]]:
    """(point, None) when solvable, else (None, certifying place).

    The point satisfies q(point) = 0 exactly; the certificate is a prime (or
    "infinity") where the Hilbert symbol of the diagonalized form is -1.
    A bounded enumeration runs first (it finds small points, keeping later
    arithmetic small); the Lagrange descent then guarantees a point whenever
    the local test passes.
    """
    cert = _solvability_certificate(q, hints)
    if cert is not None:
        return None, cert
    small = _small_point_search(q, search_bound)
    if small is not None:
        return small, None
    diag, cols = _diagonalize(q)
    d1, d2, d3 = diag
    hp = hint_primes_from(hints)
    # d1 x^2 + d2 y^2 + d3 z^2 = 0  =>  (d3 z)^2 = (-d1 d3) x^2 + (-d2 d3) y^2
    a_full, b_full = -d1 * d3, -d2 * d3
    a0 = rational_square_class(a_full, hp)
    b0 = rational_square_class(b_full, hp)
    sa = rational_sqrt(a_full / a0)
    sb = rational_sqrt(b_full / b0)
    assert sa is not None and sb is not None
    zz, xx, yy = solve_z2_eq_axx_byy(a0, b0)
    # undo the square-class scaling: u = zz*sa*sb, v = xx*sb, w = yy*sa
    u = zz * sa * sb
    v = xx * sb
    w = yy * sa
    x, y, z = v, w, u / d3
    vec = [
        cols[0][i] * x + cols[1][i] * y + cols[2][i] * z for i in range(3)
    ]
    pt = ProjPoint3(vec)
    if not _is_zero(q.evaluate(list(pt))):
        raise Rm5Error("internal error: produced point is not on the conic")  # pragma: no cover
    return pt, None


def _small_point_search(q: TernaryQF, bound: int) -> Optional[ProjPoint3]:
    """Projective points of height <= bound: solve the z-quadratic exactly."""
    g = q.gram
    a = Fraction(g[2][2])
    if a == 0:
        return ProjPoint3([0, 0, 1])
    for x in range(0, bound + 1):
        ys = range(-bound, bound + 1) if x > 0 else range(0, bound + 1)
        for y in ys:
            b = 2 * (g[0][2] * x + g[1][2] * y)
            c = g[0][0] * x * x + 2 * g[0][1] * x * y + g[1][1] * y * y
            disc = b * b - 4 * a * c
            r = rational_sqrt(disc)
            if r is None:
                continue
            z = (-b + r) / (2 * a)
            if (x, y, z) != (0, 0, 0):
                return ProjPoint3([x, y, z])
    return None


# -- parametrization ---------------------------------------------------------------


def parametrize_conic(q: TernaryQF, p: ProjPoint3 | Sequence) -> tuple:
    """Three quadratics (x1(x), x2(x), x3(x)) sweeping the conic through p.

    Second-intersection construction: for the pencil of lines through p with
    directions d(x) = u + x w in a coordinate plane missing p, the point
    Q(d) p - 2 B(p, d) d lies on the conic.  The pencil basis (u, w) is chosen
    canonically from the plane's restricted Gram matrix, which on diagonal
    conics diag(1, -5, c) with p = (u0 : v0 : 1) reproduces the classical
    norm-form parametrization ((1+5x^2)u0 - 10x v0 : (1+5x^2)v0 - 2x u0 :
    1 - 5x^2).  Distinct pencils give reparametrizations of each other.
    """
    pt = list(p)
    if not _is_zero(q.evaluate(pt)):
        raise Rm5Error("base point is not on the conic")
    if q.is_singular():
        raise SingularInputError("conic is singular")
    k = max(idx for idx in range(3) if not _is_zero(pt[idx]))
    i, j = [idx for idx in range(3) if idx != k]
    proj = [pt[i], pt[j]]
    u2 = w2 = None
    if not all(_is_zero(c) for c in proj):
        gp = [
            [q.gram[i][i], q.gram[i][j]],
            [q.gram[j][i], q.gram[j][j]],
        ]
        s = gp[0][0] * proj[0] + gp[0][1] * proj[1]
        t = gp[1][0] * proj[0] + gp[1][1] * proj[1]
        det2 = gp[0][0] * gp[1][1] - gp[0][1] * gp[1][0]
        u2 = [t, s * -1]
        w2 = [proj[0] * det2 * -1, proj[1] * det2 * -1]
        cross = u2[0] * w2[1] - u2[1] * w2[0]
        if _is_zero(cross):
            u2 = w2 = None
    if u2 is None:
        u3 = _unit(3, i)
        w3 = _unit(3, j)
    else:
        u3, w3 = [_zero(pt)] * 3, [_zero(pt)] * 3
        u3[i], u3[j] = u2[0], u2[1]
        w3[i], w3[j] = w2[0], w2[1]
    # quadratics: X(x) = Q(d) p - 2 B(p, d) d with d = u + x w
    qu = q.evaluate(u3)
    qw = q.evaluate(w3)
    quw = q.bilinear(u3, w3)
    bu = q.bilinear(pt, u3)
    bw = q.bilinear(pt, w3)
    quads = []
    for c in range(3):
        c0 = qu * pt[c] - 2 * bu * u3[c]
        c1 = quw * 2 * pt[c] - 2 * (bu * w3[c] + bw * u3[c])
        c2 = qw * pt[c] - 2 * bw * w3[c]
        quads.append([c0, c1, c2])
    quads = _normalize_quads(quads, k)
    for test_x in (Fraction(0), Fraction(1), Fraction(2), Fraction(-1), Fraction(3)):
        v = [unipoly.evaluate(qd, test_x) for qd in quads]
        if not _is_zero(q.evaluate(v)):
            raise Rm5Error("internal error: parametrization left the conic")  # pragma: no cover
    return tuple(tuple(qd) for qd in quads)


def _unit(n: int, i: int) -> list:
    out = [Fraction(0)] * n
    out[i] = Fraction(1)
    return out


def _zero(sample: list):
    for c in sample:
        if isinstance(c, QuadExtElem):
            return QuadExtElem(0, 0, c.d)
    return Fraction(0)


def _one(sample: list):
    for c in sample:
        if isinstance(c, QuadExtElem):
            return QuadExtElem(1, 0, c.d)
    return Fraction(1)


def _normalize_quads(quads: list, k: int) -> list:
    parts: list[Fraction] = []
    for qd in quads:
        for c in qd:
            if isinstance(c, QuadExtElem):
                parts.extend((c.a, c.b))
            else:
                parts.append(Fraction(c))
    den = 1
    for pfrac in parts:
        den = den * pfrac.denominator // math.gcd(den, pfrac.denominator)
    num = 0
    for pfrac in parts:
        num = math.gcd(num, abs(pfrac.numerator * (den // pfrac.denominator)))
    scale = Fraction(den, num if num else 1)
    out = [[c * scale for c in qd] for qd in quads]
    lead = None
    for c in out[k]:
        if not _is_zero(c):
            lead = c
            break
    key = lead.a if isinstance(lead, QuadExtElem) else lead
    if isinstance(lead, QuadExtElem) and key == 0:
        key = lead.b
    if key < 0:
        out = [[c * -1 for c in qd] for qd in out]
    return out


# -- full pipeline ------------------------------------------------------------------


def curve_from_mestre(
    cl: ClebschInv,
    conic: TernaryQF,
    cubic: TernaryCubic,
    point: ProjPoint3,
    field: str = FIELD_Q,
    max_shifts: int = 10,
) -> SexticModel:
    """y^2 = M(x1(x), x2(x), x3(x)); retries shifted parameters on bad fibers."""
    if conic.is_singular():
        raise SingularInputError("Mestre conic is singular; extra-automorphism case")
    quads = parametrize_conic(conic, point)
    for shift in range(max_shifts + 1):
        shifted = [_shift_quad(qd, shift) for qd in quads]
        coeffs = cubic.evaluate_poly(shifted)
        coeffs = coeffs + [Fraction(0)] * (7 - len(coeffs))
        if len(coeffs) > 7:
            raise Rm5Error("cubic on a conic parametrization must have degree <= 6")
        deg_ok = not (_is_zero(coeffs[6]) and _is_zero(coeffs[5]))
        if deg_ok:
            model = SexticModel(_drop_square_content(coeffs), field)
            if model.is_genus2():
                return model
    raise DegenerateCurveError(
        "degenerate sextic under every shifted parametrization: "
        "extra-automorphism or excluded locus"
    )


def _shift_quad(qd: Sequence, shift: int) -> list:
    if shift == 0:
        return list(qd)
    c0, c1, c2 = qd
    s = Fraction(shift)
    return [c0 + c1 * s + c2 * s * s, c1 + 2 * s * c2, c2]


def _drop_square_content(coeffs: list) -> list:
    """Divide f by its content.  y^2 = f/c is a rational twist of y^2 = f with
    the same weighted-projective invariants, and the pipeline's outputs are
    canonical only up to such twists anyway; the primitive model keeps the
    exact invariant arithmetic fast."""
    if any(isinstance(c, QuadExtElem) for c in coeffs):
        return coeffs
    parts = [Fraction(c) for c in coeffs]
    num = 0
    den = 1
    for c in parts:
        num = math.gcd(num, abs(c.numerator))
        den = den * c.denominator // math.gcd(den, c.denominator)
    if num == 0:
        return coeffs
    content = Fraction(num, den)
    return [c / content for c in parts]
