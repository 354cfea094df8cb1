"""Explicit Weierstrass models for points of the rational (m, n) chart.

Over a field without sqrt5 the model is the trace expression driven by a norm
witness eta; over a field containing sqrt5 the six printed coefficients apply
directly.  Both evaluate exactly and their invariants land on the chart point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import unipoly
from .arith import solve_norm_equation
from .errors import DegenerateCurveError, Rm5Error
from .invariants import FIELD_Q, FIELD_Q5, SexticModel
from .moduli import MNPoint, classify_mn
from .quadfield import QuadExtElem, sqrt5


@dataclass(frozen=True)
class ModelRequest:
    point: MNPoint
    field: str = FIELD_Q
    witness: Optional[tuple] = None  # (u, v) with u^2 - 5v^2 = -(m^2-5n^2-5)

    def __post_init__(self):
        if self.witness is not None:
            u, v = (Fraction(x) for x in self.witness)
            m, n = self.point.m, self.point.n
            if u * u - 5 * v * v != -(m * m - 5 * n * n - 5):
                raise Rm5Error("witness does not solve the norm equation")


def model_general(m, n, eta: QuadExtElem) -> SexticModel:
    """Rational model from a norm witness eta with N(eta) = -(m^2 - 5n^2 - 5).

    Expands Tr(mu^2 eta^3 W^3 - 2 N(mu) mu eta^2 W^2 - 5 N(mu)(N(mu) - 5))
    with W = (1 - x sqrt5)/(1 + x sqrt5), multiplied by (1 - 5x^2)^3 which
    clears the denominators; the sqrt5 parts cancel exactly (asserted).
    """
    m, n = Fraction(m), Fraction(n)
    if eta.d != 5 or eta.is_zero():
        raise Rm5Error("eta must be a nonzero element of Q(sqrt5)")
    e = m * m - 5 * n * n - 5
    if eta.norm() != -e:
        raise Rm5Error("eta norm mismatch: N(eta) must equal -(m^2 - 5n^2 - 5)")
    mu = sqrt5(m, n)
    nmu = mu.norm()
    one_minus = [QuadExtElem(1, 0), QuadExtElem(0, -1)]  # 1 - x sqrt5
    one_plus = [QuadExtElem(1, 0), QuadExtElem(0, 1)]  # 1 + x sqrt5
    # Tr(E) (1-5x^2)^3 = Tr(E (1-x sqrt5)^3 (1+x sqrt5)^3) with the W-powers
    # clearing to (1 - x sqrt5)^(3+k) (1 + x sqrt5)^(3-k):
    term1 = unipoly.scale(unipoly.power(one_minus, 6), mu * mu * eta**3)
    term2 = unipoly.scale(
        unipoly.mul(unipoly.power(one_minus, 5), one_plus), mu * eta * eta * (-2 * nmu)
    )
    w3 = unipoly.mul(unipoly.power(one_minus, 3), unipoly.power(one_plus, 3))
    term3 = unipoly.scale(w3, QuadExtElem(-5 * nmu * (nmu - 5), 0))
    half = unipoly.add(unipoly.add(term1, term2), term3)
    # Tr(c) = c + conj(c): the sqrt5 parts cancel and rationality is asserted
    coeffs = [c.trace() if isinstance(c, QuadExtElem) else 2 * Fraction(c) for c in half]
    assert all(isinstance(c, Fraction) for c in coeffs)
    model = SexticModel(coeffs, FIELD_Q)
    if not model.is_genus2():
        raise DegenerateCurveError("extra-automorphism or excluded locus")
    return model


def model_sqrt5(m, n) -> SexticModel:
    """The six-coefficient model over a field containing sqrt5.

    The x^4 and x^2 coefficients vanish identically (asserted).  m and n may
    themselves be elements of Q(sqrt5) (e.g. n in sqrt5*Q, which makes the
    model rational while the moduli point is not).
    """
    if isinstance(m, QuadExtElem) or isinstance(n, QuadExtElem):
        m = m if isinstance(m, QuadExtElem) else QuadExtElem(Fraction(m), 0, 5)
        n = n if isinstance(n, QuadExtElem) else QuadExtElem(Fraction(n), 0, 5)
        # the printed model substitutes mu = m + n sqrt5 and mu-bar = m - n sqrt5
        # formally, which keeps the chart identities for irrational m, n
        mu = m + n * sqrt5()
        mub = m - n * sqrt5()
        q = mu * mub
        e = q - 5
        c6 = mub * mub
        c5 = mub * q * -2
        c3 = q * e * -10
        c1 = mu * q * e * e * -2
        c0 = mu * mu * e**3 * -1
        model = SexticModel([c0, c1, QuadExtElem(0, 0), c3, QuadExtElem(0, 0), c5, c6], FIELD_Q5)
        assert model.coeffs[4].is_zero() and model.coeffs[2].is_zero()
        if not model.is_genus2():
            raise DegenerateCurveError("extra-automorphism or excluded locus")
        return model
    m, n = Fraction(m), Fraction(n)
    mu = sqrt5(m, n)
    mub = mu.conjugate()
    q = mu.norm()
    e = q - 5
    c6 = mub * mub
    c5 = mub * (-2 * q)
    c3 = QuadExtElem(-10 * q * e, 0)
    c1 = mu * (-2 * q * e * e)
    c0 = mu * mu * (-(e**3))
    zero = QuadExtElem(0, 0)
    model = SexticModel([c0, c1, zero, c3, zero, c5, c6], FIELD_Q5)
    assert model.coeffs[4].is_zero() and model.coeffs[2].is_zero()
    if not model.is_genus2():
        raise DegenerateCurveError("extra-automorphism or excluded locus")
    return model


def model_from_point(req: ModelRequest) -> SexticModel:
    """Route a chart point to its model; needs the norm condition over Q.

    The generic locus is tag 1a; the z = 0 family (tag 4) is also accepted
    because the closed-form models remain valid and nonsingular there.
    """
    m, n = req.point.m, req.point.n
    cls = classify_mn(m, n, req.field)
    if cls.tag not in ("1a", "4"):
        raise Rm5Error(f"moduli point classifies as {cls.tag}; no generic model"
                       + (f" (failed: {cls.failed_condition()})" if cls.tag == "none" else ""))
    if req.field == FIELD_Q5:
        return model_sqrt5(m, n)
    e = m * m - 5 * n * n - 5
    if req.witness is not None:
        u, v = (Fraction(x) for x in req.witness)
    else:
        found = solve_norm_equation(-e)
        if found is None:
            raise Rm5Error(
                f"-(m^2-5n^2-5) = {-e} is not a norm from Q(sqrt5); no rational model"
            )
        u, v = found
    return model_general(m, n, sqrt5(u, v))


def abc_to_mnuv(a, b, c) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Birational chart of the norm quadric: (a, b, c) -> (m, n, u, v) with
    m^2 - 5n^2 - 5 + u^2 - 5v^2 = 0 exactly."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    den = 5 * a * a - b * b + 5 * c * c - 1
    if den == 0:
        raise Rm5Error("denominator 5a^2 - b^2 + 5c^2 - 1 vanishes")
    v = (4 * a + 2 * c) / den
    m = 5 * a * v - 2
    n = -b * v
    u = 5 * c * v - 1
    assert m * m - 5 * n * n - 5 + u * u - 5 * v * v == 0
    return m, n, u, v
