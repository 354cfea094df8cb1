import random
from fractions import Fraction as F

import pytest

from rm5moduli.errors import Rm5Error
from rm5moduli.quadfield import QuadExtElem, norm, qe_nth_root, qe_sqrt, sqrt5, trace


def test_norm_trace_examples():
    assert norm(sqrt5(2, 1)) == -1
    assert norm(sqrt5(4, 1)) == 11
    assert trace(sqrt5(2, 1)) == 4
    assert trace(sqrt5(0, 3)) == 0
    assert trace(sqrt5(F(1, 2), 7)) == 1
    # the chart norm identity: N(m + n sqrt5) = m^2 - 5 n^2
    m, n = F(3, 7), F(-2, 5)
    assert norm(sqrt5(m, n)) == m * m - 5 * n * n


def test_norm_multiplicative_trace_additive():
    rng = random.Random(2)
    for _ in range(60):
        x = sqrt5(F(rng.randint(-9, 9), rng.randint(1, 5)), F(rng.randint(-9, 9), rng.randint(1, 5)))
        y = sqrt5(F(rng.randint(-9, 9), rng.randint(1, 5)), F(rng.randint(-9, 9), rng.randint(1, 5)))
        assert norm(x * y) == norm(x) * norm(y)
        assert trace(x + y) == trace(x) + trace(y)


def test_field_axioms():
    x = sqrt5(3, 2)
    y = sqrt5(F(1, 2), -1)
    assert (x / y) * y == x
    assert x * y == y * x
    assert x - x == 0
    assert (x**3) * (x**-3) == 1
    assert x.conjugate().conjugate() == x
    assert x * x.conjugate() == norm(x)


def test_mixing_discriminants_rejected():
    with pytest.raises(Rm5Error):
        sqrt5(1, 1) + QuadExtElem(1, 1, 2)
    with pytest.raises(Rm5Error):
        QuadExtElem(0, 0, 4)


def test_qe_sqrt():
    rng = random.Random(4)
    for _ in range(40):
        x = sqrt5(F(rng.randint(-9, 9), rng.randint(1, 4)), F(rng.randint(-9, 9), rng.randint(1, 4)))
        y = qe_sqrt(x * x)
        assert y is not None and y * y == x * x
    assert qe_sqrt(sqrt5(0, 1)) is None  # sqrt5 itself is not a square
    s = qe_sqrt(sqrt5(5, 0))
    assert s is not None and s * s == 5  # sqrt of 5 is sqrt5
    assert qe_sqrt(sqrt5(2, 0)) is None
    # 9 + 4 sqrt5 = (2 + sqrt5)^2
    r = qe_sqrt(sqrt5(9, 4))
    assert r is not None and r * r == sqrt5(9, 4)


def test_qe_nth_root():
    rng = random.Random(6)
    for k in (2, 3, 5):
        for _ in range(25):
            x = sqrt5(F(rng.randint(-6, 6), rng.randint(1, 3)), F(rng.randint(-6, 6), rng.randint(1, 3)))
            if x.is_zero():
                continue
            y = qe_nth_root(x**k, k)
            assert y is not None and y**k == x**k
    assert qe_nth_root(sqrt5(2, 0), 3) is None
    assert qe_nth_root(sqrt5(F(1, 32), 0), 5) == F(1, 2)
