import random
from fractions import Fraction as F

import pytest

from rm5moduli.arith import (
    INFINITY,
    factor,
    hilbert_symbol,
    is_norm_from_sqrt5,
    is_square,
    norm_sqrt5_brute_search,
    rational_nth_root,
    rational_square_class,
    relevant_places,
    solve_norm_equation,
    solve_z2_eq_axx_byy,
    squarefree_part,
)
from rm5moduli.errors import Rm5Error


def test_factor_examples():
    assert factor(12).factors == ((2, 2), (3, 1))
    assert factor(12).sign == 1
    f = factor(-3125)
    assert f.sign == -1 and f.factors == ((5, 5),)
    # appears in the nondegeneracy condition constant term; trial division oracle
    n = 9261
    divs = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    assert factor(n).primes() == tuple(divs) == (3, 7)
    assert factor(9261).factors == ((3, 3), (7, 3))


def test_factor_reconstructs():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(-10**9, 10**9)
        if n == 0:
            continue
        assert factor(n).value() == n


def test_factor_zero_rejected():
    with pytest.raises(Rm5Error):
        factor(0)


def test_factor_hints_fast_path():
    p = 1000003
    n = p * p * 77
    assert factor(n, hint_primes=[p]).factors == ((7, 1), (11, 1), (p, 2))


def test_squarefree_part():
    assert squarefree_part(12) == 3
    assert squarefree_part(-50) == -2
    assert squarefree_part(1) == 1


def test_is_square():
    assert is_square(F(9, 4))
    assert not is_square(F(5))
    s = F(8, 3125)
    assert is_square(3125 * s * s - 8 * s)  # evaluates to 0


def test_hilbert_symbol_examples():
    assert hilbert_symbol(1, F(7, 3), 13) == 1
    assert hilbert_symbol(2, 3, 2) == -1
    assert hilbert_symbol(-1, -1, INFINITY) == -1


def test_hilbert_symbol_brute_force_oracle_mod_64():
    # (2,3)_2 = -1: no primitive solution of z^2 = 2x^2 + 3y^2 mod 2^6
    mod = 64
    for x in range(mod):
        for y in range(mod):
            for z in range(mod):
                if x % 2 == 0 and y % 2 == 0 and z % 2 == 0:
                    continue
                assert (z * z - 2 * x * x - 3 * y * y) % mod != 0


def test_hilbert_symmetry_and_bimultiplicativity():
    rng = random.Random(11)
    places = [INFINITY, 2, 3, 5, 7, 13]
    for _ in range(40):
        a = F(rng.randint(1, 30), rng.randint(1, 10)) * rng.choice([1, -1])
        b = F(rng.randint(1, 30), rng.randint(1, 10)) * rng.choice([1, -1])
        c = F(rng.randint(1, 30), rng.randint(1, 10)) * rng.choice([1, -1])
        for p in places:
            assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
            assert hilbert_symbol(a * c, b, p) == hilbert_symbol(a, b, p) * hilbert_symbol(c, b, p)


def test_hilbert_product_formula():
    rng = random.Random(7)
    for _ in range(200):
        a = F(rng.randint(1, 100), rng.randint(1, 40)) * rng.choice([1, -1])
        b = F(rng.randint(1, 100), rng.randint(1, 40)) * rng.choice([1, -1])
        prod = 1
        for p in relevant_places([a, b], hint_primes=[5]):
            prod *= hilbert_symbol(a, b, p)
        assert prod == 1


def test_norm_test_examples():
    assert is_norm_from_sqrt5(F(-1))  # norm of 2 + sqrt5
    assert not is_norm_from_sqrt5(F(2))
    assert is_norm_from_sqrt5(F(11))  # norm of 4 + sqrt5
    assert is_norm_from_sqrt5(F(-4))  # norm of 1 + sqrt5
    with pytest.raises(Rm5Error):
        is_norm_from_sqrt5(F(0))


def test_norm_local_obstruction_at_2():
    # 2 is not a norm; the local certificate is (5, 2)_2 = -1
    assert hilbert_symbol(5, 2, 2) == -1


def test_norm_test_agrees_with_brute_search_oracle():
    rng = random.Random(3)
    for _ in range(120):
        c = F(rng.randint(-40, 40), rng.randint(1, 12))
        if c == 0:
            continue
        witness = norm_sqrt5_brute_search(c, 60)
        if witness is not None:
            u, v = witness
            assert u * u - 5 * v * v == c
            assert is_norm_from_sqrt5(c)


def test_norm_test_agrees_with_local_analysis():
    # local criterion: c is a norm iff hilbert(5, c, p) = 1 at every place
    rng = random.Random(9)
    for _ in range(500):
        c = F(rng.randint(-100, 100), rng.randint(1, 100))
        if c == 0:
            continue
        local = all(
            hilbert_symbol(5, c, p) == 1 for p in relevant_places([c], hint_primes=[5])
        )
        assert is_norm_from_sqrt5(c) == local


def test_solve_norm_equation_examples():
    u, v = solve_norm_equation(F(-4))
    assert u * u - 5 * v * v == -4
    assert solve_norm_equation(F(2)) is None
    u, v = solve_norm_equation(F(4))
    assert u * u - 5 * v * v == 4


def test_solve_norm_equation_random():
    rng = random.Random(17)
    count = 0
    for _ in range(200):
        c = F(rng.randint(-60, 60), rng.randint(1, 20))
        if c == 0:
            continue
        out = solve_norm_equation(c)
        if out is not None:
            u, v = out
            assert u * u - 5 * v * v == c
            count += 1
    assert count > 30


def test_descent_solver():
    rng = random.Random(23)
    for _ in range(60):
        a = squarefree_part(rng.randint(1, 400) * rng.choice([1, -1]))
        b = squarefree_part(rng.randint(1, 400) * rng.choice([1, -1]))
        solvable = all(
            hilbert_symbol(a, b, p) == 1 for p in relevant_places([F(a), F(b)])
        )
        if not solvable:
            continue
        z, x, y = solve_z2_eq_axx_byy(a, b)
        assert (z, x, y) != (0, 0, 0)
        assert z * z == a * x * x + b * y * y


def test_rational_nth_root():
    assert rational_nth_root(F(32, 243), 5) == F(2, 3)
    assert rational_nth_root(F(-27), 3) == -3
    assert rational_nth_root(F(2), 2) is None
    assert rational_square_class(F(12, 5)) == 15
