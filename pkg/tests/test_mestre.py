import random
from fractions import Fraction as F

import pytest

from rm5moduli import unipoly
from rm5moduli.arith import hilbert_symbol, is_norm_from_sqrt5, rational_sqrt
from rm5moduli.errors import Rm5Error, SingularInputError
from rm5moduli.invariants import (
    FIELD_Q,
    FIELD_Q5,
    ClebschInv,
    IgusaClebsch,
    clebsch_from_ic,
    ic_from_gh,
    ic_from_mn,
    igusa_clebsch_from_sextic,
    weighted_equal,
    weighted_equal_cc,
)
from rm5moduli.mestre import (
    ProjPoint3,
    TernaryQF,
    conic_discriminant,
    conic_is_solvable,
    conic_rational_point,
    curve_from_mestre,
    mestre_conic,
    mestre_cubic,
    parametrize_conic,
)
from rm5moduli.multipoly import MultiPoly, parse_poly
from rm5moduli.quadfield import QuadExtElem, sqrt5


def test_mestre_tables_at_special_invariants():
    cl = ClebschInv(F(0), F(0), F(0), F(1))
    L = mestre_conic(cl)
    assert L.gram[0][0] == 0
    assert L.gram[1][1] == 1
    assert L.gram[0][2] == 1
    assert L.gram[0][1] == 0
    M = mestre_cubic(cl)
    assert M.coefficient(1, 1, 1) == 2
    # all index orders agree
    assert M.coefficient(1, 2, 3) == M.coefficient(3, 2, 1) == M.coefficient(2, 1, 3)
    # with A = D = 1, B = C = 0 the printed table gives 2, 1/3 and -CD/3 = 0
    cl2 = ClebschInv(F(1), F(0), F(0), F(1))
    M2 = mestre_cubic(cl2)
    assert M2.coefficient(1, 1, 1) == 2
    assert M2.coefficient(1, 1, 2) == F(1, 3)
    assert M2.coefficient(2, 2, 2) == 0


def test_gh_family_conic_matches_printed_polynomials():
    vs = ("g", "h")
    g, h = MultiPoly.variables(vs)
    conic = mestre_conic(clebsch_from_ic(ic_from_gh(g, h)))
    scale = F(2**4 * 3**7 * 5**14)
    l11 = conic.gram[0][0] * scale
    assert l11 == parse_poly(
        "189843750*(0 - 96*g^3 - 337*g^2 - 108*g + 400*h - 9)", vs
    )
    assert l11.evaluate({"g": F(0), "h": F(1)}) == 189843750 * 391
    l12 = conic.gram[0][1] * scale
    assert l12 == parse_poly(
        "0-2531250*(0 - 144*g^4 - 1299*g^3 - 754*g^2 + 2000*g*h - 144*g + 500*h - 9)", vs
    )


def test_conic_discriminant():
    assert conic_discriminant(TernaryQF.diagonal(1, -5, F(7))) == -35
    vs = ("g", "h")
    g, h = MultiPoly.variables(vs)
    conic = mestre_conic(clebsch_from_ic(ic_from_gh(g, h)))
    scale = F(2**4 * 3**7 * 5**14)
    scaled = TernaryQF([[e * scale for e in row] for row in conic.gram])
    ek = parse_poly(
        "2*(0 - 972*g^5 - 324*g^4 - 27*g^3 - 4500*g^2*h - 1350*g*h + 6250*h^2 - 108*h)", vs
    )
    expected = parse_poly("2^7 * 3^3 * 5^22 * h^2 * (8*h - 9*g^2)^2", vs) * ek
    assert conic_discriminant(scaled) == expected


def test_conic_solvability_examples():
    assert conic_is_solvable(TernaryQF.diagonal(1, -5, 4))
    assert not conic_is_solvable(TernaryQF.diagonal(1, 1, 1))
    # 2 is not a norm from Q(sqrt5): cross-check both routes
    assert not conic_is_solvable(TernaryQF.diagonal(1, -5, 2))
    assert not is_norm_from_sqrt5(F(-2)) and not is_norm_from_sqrt5(F(2))
    with pytest.raises(SingularInputError):
        conic_is_solvable(TernaryQF.diagonal(1, -5, 0))


def test_conic_point_and_certificate():
    pt, cert = conic_rational_point(TernaryQF.diagonal(1, -5, 4))
    assert cert is None
    q = TernaryQF.diagonal(1, -5, 4)
    assert q.evaluate(list(pt)) == 0
    pt2, cert2 = conic_rational_point(TernaryQF.diagonal(1, 1, 1))
    assert pt2 is None and cert2 == "infinity"
    pt3, cert3 = conic_rational_point(TernaryQF.diagonal(1, -5, 2))
    assert pt3 is None
    # the certificate has Hilbert symbol -1 on the diagonalized form
    assert hilbert_symbol(F(-1) * 1 * 2, F(-1) * -5 * 2, cert3) == -1


def test_solvability_agrees_with_projective_search():
    rng = random.Random(21)
    tested = 0
    for _ in range(200):
        diag = [rng.randint(-30, 30) for _ in range(3)]
        if 0 in diag:
            continue
        q = TernaryQF.diagonal(*diag)
        found = _search_point(diag, 20)
        if found is not None:
            assert q.evaluate(list(found)) == 0
            assert conic_is_solvable(q)
            tested += 1
        elif not conic_is_solvable(q):
            _, cert = conic_rational_point(q)
            a = F(-diag[0] * diag[2])
            b = F(-diag[1] * diag[2])
            assert hilbert_symbol(a, b, cert) == -1
    assert tested > 40


def _search_point(diag, height):
    a, b, c = diag
    for x in range(0, height + 1):
        for y in range(-height, height + 1):
            rest = -(a * x * x + b * y * y)
            if c == 0:
                continue
            z2, rem = divmod(rest, c)
            if rem != 0 or z2 < 0:
                continue
            z = rational_sqrt(F(z2))
            if z is not None and (x, y, z) != (0, 0, 0):
                return (F(x), F(y), z)
    return None


def test_point_search_on_pipeline_conics():
    rng = random.Random(22)
    done = 0
    while done < 10:
        m = F(rng.randint(-6, 6), rng.randint(1, 3))
        n = F(rng.randint(-6, 6), rng.randint(1, 3))
        q = m * m - 5 * n * n
        e = q - 5
        if n == 0 or q in (0, 5, 9) or e == 0:
            continue
        if not is_norm_from_sqrt5(e):
            continue
        ic = ic_from_mn(m, n)
        conic = mestre_conic(clebsch_from_ic(ic))
        if conic.is_singular():
            continue
        pt, cert = conic_rational_point(conic, hints=[m, n, q, e])
        assert cert is None
        assert conic.evaluate(list(pt)) == 0
        done += 1


def test_parametrize_conic_printed_form():
    # the classical norm-form parametrization at (u0 : v0 : 1)
    for (u0, v0) in ((F(1), F(1)), (F(3), F(1)), (F(2), F(3))):
        c = 5 * v0 * v0 - u0 * u0
        q = TernaryQF.diagonal(1, -5, c)
        quads = parametrize_conic(q, ProjPoint3([u0, v0, 1]))
        assert quads[0] == (u0, -10 * v0, 5 * u0)
        assert quads[1] == (v0, -2 * u0, 5 * v0)
        assert quads[2] == (1, 0, -5)


def test_parametrize_identity_on_random_solvable_conics():
    rng = random.Random(23)
    done = 0
    while done < 20:
        diag = [rng.randint(-12, 12) for _ in range(3)]
        if 0 in diag:
            continue
        q = TernaryQF.diagonal(*diag)
        if q.is_singular() or not conic_is_solvable(q):
            continue
        pt, _ = conic_rational_point(q)
        quads = parametrize_conic(q, pt)
        # exact polynomial identity q(x1(x), x2(x), x3(x)) = 0
        residual = [F(0)] * 5
        for i in range(3):
            for j in range(3):
                prod = unipoly.mul(list(quads[i]), list(quads[j]))
                for k, val in enumerate(prod):
                    residual[k] += q.gram[i][j] * val
        assert all(v == 0 for v in residual)
        done += 1


def test_parametrize_sqrt5_point():
    # the point (sqrt5 : 1 : 0) on the reduced conic over Q(sqrt5)
    e = QuadExtElem(F(-9), 0)  # m = 1, n = 1: m^2 - 5n^2 - 5 = -9
    q = TernaryQF([[QuadExtElem(1, 0), QuadExtElem(0, 0), QuadExtElem(0, 0)],
                   [QuadExtElem(0, 0), QuadExtElem(-5, 0), QuadExtElem(0, 0)],
                   [QuadExtElem(0, 0), QuadExtElem(0, 0), e]])
    p = ProjPoint3([sqrt5(), QuadExtElem(1, 0), QuadExtElem(0, 0)])
    quads = parametrize_conic(q, p)
    for x in (F(0), F(1), F(-2), F(1, 3)):
        v = [unipoly.evaluate(list(qd), x) for qd in quads]
        assert q.evaluate(v) == 0


def test_curve_from_mestre_roundtrip():
    rng = random.Random(24)
    done = 0
    while done < 12:
        m = F(rng.randint(-8, 8), rng.randint(1, 4))
        n = F(rng.randint(-8, 8), rng.randint(1, 4))
        q = m * m - 5 * n * n
        e = q - 5
        if n == 0 or q in (0, 5) or e == 0 or not is_norm_from_sqrt5(e):
            continue
        ic = ic_from_mn(m, n)
        cl = clebsch_from_ic(ic)
        conic = mestre_conic(cl)
        if conic.is_singular():
            continue
        pt, _ = conic_rational_point(conic, hints=[m, n, q, e])
        model = curve_from_mestre(cl, conic, mestre_cubic(cl), pt)
        got = igusa_clebsch_from_sextic(model)
        assert weighted_equal_cc(got, ic)
        assert weighted_equal(got, ic, FIELD_Q)
        done += 1


def test_curve_from_mestre_reparametrization_invariance():
    m, n = F(1), F(1)
    ic = ic_from_mn(m, n)
    cl = clebsch_from_ic(ic)
    conic = mestre_conic(cl)
    cubic = mestre_cubic(cl)
    pt, _ = conic_rational_point(conic, hints=[m, n])
    quads = parametrize_conic(conic, pt)
    base = None
    for shift in (0, 1):
        shifted = []
        for qd in quads:
            c0, c1, c2 = qd
            s = F(shift)
            shifted.append([c0 + c1 * s + c2 * s * s, c1 + 2 * s * c2, c2])
        coeffs = cubic.evaluate_poly(shifted)
        from rm5moduli.invariants import SexticModel

        model = SexticModel(coeffs + [F(0)] * (7 - len(coeffs)))
        got = igusa_clebsch_from_sextic(model)
        if base is None:
            base = got
        assert weighted_equal_cc(got, base)


def test_singular_conic_rejected():
    ic = ic_from_mn(F(1), F(0))  # n = 0 is on the singular locus
    cl = clebsch_from_ic(ic)
    conic = mestre_conic(cl)
    assert conic.is_singular()
    with pytest.raises(SingularInputError):
        conic_rational_point(conic)
    with pytest.raises(SingularInputError):
        curve_from_mestre(cl, conic, mestre_cubic(cl), ProjPoint3([1, 0, 0]))


def test_section51_point_on_excluded_locus_conic():
    # the recorded rational point at g = -3/10, symbolic h: it lies on the
    # Mestre conic of the 400-weighted invariant tuple, equivalently its
    # diag(400, 400^2, 400^3) image lies on the raw conic -- as a polynomial
    # identity in h over Q
    vs = ("h",)
    h = MultiPoly.var(vs, "h")
    one = MultiPoly.const(vs, 1)
    g = F(-3, 10)
    lam = F(400)
    ic = ic_from_gh(MultiPoly.const(vs, g), h)
    scaled = IgusaClebsch(
        ic.i2 * lam, ic.i4 * lam**2, ic.i6 * lam**3, ic.i10 * lam**5
    )
    conic = mestre_conic(clebsch_from_ic(scaled))
    pt = [
        h * h * F(64000, 81) - h * F(2368, 75) + one * F(284, 3125),
        h * F(128, 15) - one * F(51, 1250),
        h + one * F(9, 1000),
    ]
    residual = MultiPoly.zero(vs)
    for i in range(3):
        for j in range(3):
            residual = residual + conic.gram[i][j] * pt[i] * pt[j]
    assert residual.is_zero()


def test_reduced_cubic_identity():
    # the chain composite applied to the Mestre cubic of the (m, n) invariants
    # is proportional to the recorded reduced cubic (x1^3 coefficient m^2+5n^2)
    from rm5moduli.qf_reduce import rm5_chain_composite

    ptot, den, c_num, c_den = rm5_chain_composite()
    mn = ("m", "n")
    m, n = MultiPoly.variables(mn)
    one = MultiPoly.const(mn, 1)
    qq = m * m - n * n * 5
    e = qq - one * 5
    ic = ic_from_mn(m, n)
    cubic = mestre_cubic(clebsch_from_ic(ic))
    d50inv = (F(1, 50), F(1, 2500), F(1, 125000))
    cols = [[ptot[i][j] * d50inv[i] for i in range(3)] for j in range(3)]
    # printed reduced-cubic form coefficients, keyed by sorted index triple
    printed_form = {
        (1, 1, 1): m * m + n * n * 5,
        (1, 1, 2): m * n * 30,
        (1, 2, 2): (m * m + n * n * 5) * 15,
        (2, 2, 2): m * n * 50,
        (1, 1, 3): (m * 2 - one * 3) * qq * -1,
        (1, 2, 3): n * qq * -20,
        (2, 2, 3): (m * 2 + one * 3) * qq * -5,
        (3, 3, 3): e * qq * -2,
    }
    comp_form = _cubic_compose_form(cubic, cols, mn)
    lhs_lead = comp_form[(1, 1, 1)]
    rhs_lead = printed_form[(1, 1, 1)]
    assert not lhs_lead.is_zero()
    for key, val in printed_form.items():
        assert comp_form[key] * rhs_lead == val * lhs_lead
    for key in ((1, 3, 3), (2, 3, 3)):
        assert comp_form[key].is_zero()


def _cubic_compose_form(cubic, cols, vs):
    """Form coefficients of M(T y), keyed by sorted y-index triple.

    Works in the extended ring with auxiliary variables y1, y2, y3: the
    substituted cubic's coefficient of y_a y_b y_c is read off exactly.
    """
    ext = vs + ("y1", "y2", "y3")
    ys = [MultiPoly.var(ext, f"y{k+1}") for k in range(3)]
    subs = []
    for i in range(3):  # x_i = sum_a cols[a][i] y_a
        total = MultiPoly.zero(ext)
        for a in range(3):
            total = total + cols[a][i].extend(ext) * ys[a]
        subs.append(total)
    poly = MultiPoly.zero(ext)
    for key, c in cubic.coeffs.items():
        i, j, k = key
        mult = cubic._multiplicity(key)
        cx = c.extend(ext) if isinstance(c, MultiPoly) else c
        poly = poly + subs[i - 1] * subs[j - 1] * subs[k - 1] * cx * mult
    from itertools import combinations_with_replacement

    out = {}
    yidx = [ext.index(f"y{k+1}") for k in range(3)]
    for trip in combinations_with_replacement((1, 2, 3), 3):
        want = [0, 0, 0]
        for t in trip:
            want[t - 1] += 1
        terms = {}
        for expo, coeff in poly.terms.items():
            if [expo[yidx[0]], expo[yidx[1]], expo[yidx[2]]] != want:
                continue
            geo = list(expo)
            for idx in yidx:
                geo[idx] = 0
            key2 = tuple(geo[ext.index(v)] for v in vs)
            terms[key2] = terms.get(key2, F(0)) + coeff
        out[trip] = MultiPoly(vs, terms)
    return out
