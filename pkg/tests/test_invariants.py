import random
from fractions import Fraction as F

import pytest

from rm5moduli import unipoly
from rm5moduli.errors import DegenerateCurveError, Rm5Error
from rm5moduli.invariants import (
    FIELD_Q,
    FIELD_Q5,
    ClebschInv,
    IgusaClebsch,
    SexticModel,
    clebsch_from_ic,
    clebsch_invariants,
    ic_from_clebsch,
    ic_from_gh,
    ic_from_mn,
    ic_from_wilson,
    igusa_clebsch_from_sextic,
    normalize_ic,
    weighted_equal,
    weighted_equal_cc,
)
from rm5moduli.multipoly import MultiPoly, parse_poly
from rm5moduli.quadfield import sqrt5


def rand_sextic(rng, degree6=True) -> SexticModel:
    while True:
        cs = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(7)]
        if degree6 and cs[6] == 0:
            cs[6] = F(1)
        if not degree6:
            cs[6] = F(0)
            if cs[5] == 0:
                cs[5] = F(1)
        try:
            model = SexticModel(cs)
        except Rm5Error:
            continue
        if model.is_genus2():
            return model


def test_anchor_bring_curve():
    # y^2 = x^5 - 1 lands on the five-fold symmetry class (0 : 0 : 0 : 1)
    model = SexticModel([-1, 0, 0, 0, 0, 1, 0])
    ic = igusa_clebsch_from_sextic(model)
    assert (ic.i2, ic.i4, ic.i6) == (0, 0, 0)
    assert ic.i10 == 3125 == model.discriminant()
    assert weighted_equal(ic, IgusaClebsch(0, 0, 0, 1), FIELD_Q)
    assert normalize_ic(ic).tuple() == (0, 0, 0, 1)


def test_anchor_product_curve():
    # (2x^3 - 2x^2 - x - 1)(x^3 - x^2 + 2x + 2) has invariants (8 : 1 : 3 : 8/3125)
    a = [-1, -1, -2, 2]
    b = [2, 2, -1, 1]
    model = SexticModel(unipoly.mul(a, b))
    ic = igusa_clebsch_from_sextic(model)
    assert weighted_equal(ic, IgusaClebsch(8, 1, 3, F(8, 3125)), FIELD_Q)
    assert ic.i10 == model.discriminant()


def test_i10_is_discriminant_on_random_sextics():
    rng = random.Random(10)
    for k in range(20):
        model = rand_sextic(rng, degree6=(k % 3 != 0))
        assert igusa_clebsch_from_sextic(model).i10 == model.discriminant()


def test_degenerate_sextic_rejected():
    with pytest.raises(DegenerateCurveError):
        igusa_clebsch_from_sextic(SexticModel([0, 0, 1, 0, 0, 0, 1]))  # x^2(x^4+1)
    with pytest.raises(Rm5Error):
        SexticModel([1, 1, 1, 1, 1])  # degree <= 4


def test_transformation_invariance():
    rng = random.Random(11)
    for _ in range(10):
        model = rand_sextic(rng)
        ic = igusa_clebsch_from_sextic(model)
        for _ in range(5):
            r = F(rng.randint(-5, 5), rng.randint(1, 3))
            if r != 0:
                assert weighted_equal(
                    igusa_clebsch_from_sextic(model.scale_x(r)), ic, FIELD_Q
                )
                assert weighted_equal(
                    igusa_clebsch_from_sextic(model.scale_f(r)), ic, FIELD_Q
                )
            assert weighted_equal(
                igusa_clebsch_from_sextic(model.translate(r)), ic, FIELD_Q
            )
        assert weighted_equal(igusa_clebsch_from_sextic(model.invert_x()), ic, FIELD_Q)


def test_translation_example():
    model = rand_sextic(random.Random(3))
    shifted = model.translate(F(1))
    assert weighted_equal_cc(
        igusa_clebsch_from_sextic(shifted), igusa_clebsch_from_sextic(model)
    )


def test_clebsch_ic_linear_relations():
    cl = ClebschInv(F(0), F(0), F(0), F(1))
    ic = ic_from_clebsch(cl)
    assert ic.tuple() == (0, 0, 0, -162 * 28125)
    back = clebsch_from_ic(IgusaClebsch(0, 0, 0, 1))
    assert (back.a, back.b, back.c) == (0, 0, 0)
    assert back.d == F(-1, 4556250)


def test_clebsch_roundtrip_random():
    rng = random.Random(12)
    for _ in range(50):
        vals = [F(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(4)]
        if all(v == 0 for v in vals):
            continue
        ic = IgusaClebsch(*vals)
        cl = clebsch_from_ic(ic)
        assert ic_from_clebsch(cl).tuple() == ic.tuple()
        # and the reverse composition
        cl2 = ClebschInv(*vals)
        assert clebsch_from_ic(ic_from_clebsch(cl2)) == cl2


def test_ic_from_gh_examples():
    assert ic_from_gh(F(0), F(1)).tuple() == (6, 0, 36, 4)
    assert ic_from_gh(F(0), F(54, 3125)).tuple() == (
        6, 0, F(1944, 3125), F(11664, 9765625),
    )
    assert ic_from_gh(F(2), F(0)).i10 == 0  # h = 0 is not a curve


def test_ic_from_mn_examples():
    assert ic_from_mn(F(1), F(0)).i2 == -20 * (-2 + 3)
    assert ic_from_mn(F(3), F(0)).i4 == 0  # on the m^2 - 5n^2 = 9 locus


def test_ic_from_mn_matches_gh_chart_symbolically():
    vs = ("m", "n")
    m, n = MultiPoly.variables(vs)
    one = MultiPoly.const(vs, 1)
    q = m * m - n * n * 5
    g = (q - one * 9) * F(1, 30)
    h = m * q * (q - one * 5) * F(1, 12500) + (g * g * 250 + g * 75 + one * 6) * F(9, 6250)
    chart = ic_from_gh(g, h)
    direct = ic_from_mn(m, n)
    # weighted scaling by the constant 50
    lam = F(50)
    assert direct.i2 == chart.i2 * lam
    assert direct.i4 == chart.i4 * lam**2
    assert direct.i6 == chart.i6 * lam**3
    assert direct.i10 == chart.i10 * lam**5


def test_ic_from_mn_matches_gh_chart_numerically():
    rng = random.Random(13)
    for _ in range(100):
        m = F(rng.randint(-9, 9), rng.randint(1, 5))
        n = F(rng.randint(-9, 9), rng.randint(1, 5))
        q = m * m - 5 * n * n
        g = (q - 9) / 30
        h = m * q * (q - 5) / 12500 + F(9, 6250) * (250 * g * g + 75 * g + 6)
        a = ic_from_mn(m, n)
        b = ic_from_gh(g, h)
        if any(v == 0 for v in a.tuple()):
            continue
        assert weighted_equal(a, b, FIELD_Q)


def test_ic_from_wilson():
    # z6 = 0 limit is (via the printed chart) the (8 : 1 : 3 : s) family
    h0 = F(3, 7)
    ic = ic_from_wilson(F(1), F(-2), 64 * h0)
    assert weighted_equal(ic, ic_from_gh(F(0), h0), FIELD_Q)
    with pytest.raises(Rm5Error):
        ic_from_wilson(F(1), F(1), F(0))
    ic2 = ic_from_wilson(F(1), F(0), F(2))
    assert weighted_equal(ic2, ic_from_gh(F(-1, 6), F(2, 64)), FIELD_Q)
    # the (0, -5/2, 1/2) point lies on the class of (8 : 1 : 3 : 8/3125)
    ic3 = ic_from_wilson(F(0), F(-5, 2), F(1, 2))
    assert weighted_equal(ic3, IgusaClebsch(8, 1, 3, F(8, 3125)), FIELD_Q)


def test_weighted_equality_cases():
    a = IgusaClebsch(1, 1, 1, 1)
    b = IgusaClebsch(2, 4, 8, 32)
    assert weighted_equal(a, b, FIELD_Q)
    # lam^5 = 7 has no rational solution: CC yes, Q no
    c = IgusaClebsch(0, 0, 0, 1)
    d = IgusaClebsch(0, 0, 0, 7)
    assert weighted_equal_cc(c, d)
    assert not weighted_equal(c, d, FIELD_Q)
    assert weighted_equal(c, IgusaClebsch(0, 0, 0, 32), FIELD_Q)  # lam = 2
    # zero-pattern mismatch
    assert not weighted_equal_cc(IgusaClebsch(1, 0, 0, 1), IgusaClebsch(1, 0, 1, 1))
    # over Q(sqrt5): lam = sqrt5 scaling of a two-slot pattern
    f = IgusaClebsch(0, 1, 0, sqrt5(0, 1), field=FIELD_Q5)
    e = f.scale(sqrt5())
    assert e.tuple() == (0, 5, 0, 125)
    assert weighted_equal(f, e, FIELD_Q5)
    assert not weighted_equal(f, IgusaClebsch(0, 5, 0, sqrt5(0, 125), field=FIELD_Q5), FIELD_Q5)


def test_weighted_equality_single_slot_field_roots():
    # single nonzero slot of weight 2: field equality needs a square ratio
    assert weighted_equal(IgusaClebsch(0, 1, 0, 0), IgusaClebsch(0, 4, 0, 0), FIELD_Q)
    assert not weighted_equal(IgusaClebsch(0, 1, 0, 0), IgusaClebsch(0, 2, 0, 0), FIELD_Q)
    assert weighted_equal(IgusaClebsch(0, 1, 0, 0), IgusaClebsch(0, 5, 0, 0), FIELD_Q5)


def test_normalize_ic():
    ic = IgusaClebsch(F(2000), F(62500), F(46875000), F(2500000000))
    assert normalize_ic(ic).tuple() == (40, 25, 375, 8)
    assert normalize_ic(IgusaClebsch(0, 0, 0, F(1, 3125))).tuple() == (0, 0, 0, 1)
    assert normalize_ic(IgusaClebsch(-1, 1, 1, 1)).tuple() == (1, 1, -1, -1)
    rng = random.Random(14)
    for _ in range(25):
        vals = [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)]
        if all(v == 0 for v in vals):
            continue
        ic = IgusaClebsch(*vals)
        out = normalize_ic(ic)
        assert weighted_equal(out, ic, FIELD_Q)
        assert all(v.denominator == 1 for v in out.tuple())
