"""Integer and rational number theory: factorization, Hilbert symbols, norm equations.

Everything here is exact.  Rationals are `fractions.Fraction` throughout; the
spec's rational scalar (lowest terms, positive denominator, 0 = 0/1) is exactly
Fraction's canonical representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import NormEquationError, Rm5Error

INFINITY = "infinity"

_TRIAL_LIMIT = 10**6

# deterministic Miller-Rabin bases, valid for n < 3.3 * 10^24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_small_prime_cache: list[int] = []


def _small_primes() -> list[int]:
    if not _small_prime_cache:
        limit = 10**4
        sieve = bytearray([1]) * (limit + 1)
        sieve[0] = sieve[1] = 0
        for p in range(2, int(limit**0.5) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        _small_prime_cache.extend(i for i, b in enumerate(sieve) if b)
    return _small_prime_cache


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _small_primes()[:60]:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        seed += 1
        y, c, m = seed, seed + 1, 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class FactoredInteger:
    """sign * prod(p^e); primes strictly increasing, exponents >= 1."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def factor(n: int, hint_primes: Iterable[int] = ()) -> FactoredInteger:
    """Exact prime factorization of a nonzero integer.

    `hint_primes` are divided out first.  Callers that know structured factors
    of n (for example squared discriminant pieces) pass their primes here so
    Pollard rho never has to split a large square blindly.
    """
    if n == 0:
        raise Rm5Error("cannot factor zero")
    sign = 1 if n > 0 else -1
    n = abs(n)
    found: dict[int, int] = {}
    for p in sorted(set(hint_primes)):
        if p < 2:
            continue
        while n % p == 0:
            n //= p
            found[p] = found.get(p, 0) + 1
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            n //= p
            found[p] = found.get(p, 0) + 1
    p = _small_primes()[-1] + 2
    while n > 1 and p <= _TRIAL_LIMIT and p * p <= n:
        while n % p == 0:
            n //= p
            found[p] = found.get(p, 0) + 1
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return FactoredInteger(sign, tuple(sorted(found.items())))


def hint_primes_from(hints: Iterable[Fraction | int]) -> set[int]:
    """All primes of the numerators and denominators of the given rationals."""
    primes: set[int] = set()
    for h in hints:
        h = Fraction(h)
        for part in (h.numerator, h.denominator):
            if part not in (0, 1, -1):
                primes.update(factor(part).primes())
    return primes


def squarefree_part(n: int, hint_primes: Iterable[int] = ()) -> int:
    """The unique squarefree integer in the square class of n != 0."""
    f = factor(n, hint_primes)
    out = f.sign
    for p, e in f.factors:
        if e % 2:
            out *= p
    return out


def rational_square_class(q: Fraction | int, hint_primes: Iterable[int] = ()) -> int:
    """Squarefree-integer representative of the square class of q != 0."""
    q = Fraction(q)
    return squarefree_part(q.numerator * q.denominator, hint_primes)


def is_square(q: Fraction | int) -> bool:
    """True iff q is the square of a rational (0 counts)."""
    q = Fraction(q)
    if q < 0:
        return False
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    return rn * rn == q.numerator and rd * rd == q.denominator


def rational_sqrt(q: Fraction | int) -> Optional[Fraction]:
    q = Fraction(q)
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def integer_nth_root(n: int, k: int) -> Optional[int]:
    """Exact k-th root of n, or None.  Negative n allowed for odd k."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = integer_nth_root(-n, k)
        return None if r is None else -r
    if n in (0, 1):
        return n
    r = int(round(n ** (1.0 / k)))
    for cand in range(max(r - 2, 0), r + 3):
        if cand**k == n:
            return cand
    return None


def rational_nth_root(q: Fraction | int, k: int) -> Optional[Fraction]:
    q = Fraction(q)
    rn = integer_nth_root(q.numerator, k)
    rd = integer_nth_root(q.denominator, k)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def legendre_symbol(a: int, p: int) -> int:
    """(a|p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_prime(a: int, p: int) -> int:
    """x with x^2 = a (mod p) for prime p and a a residue (Tonelli-Shanks)."""
    a %= p
    if p == 2 or a == 0:
        return a
    if legendre_symbol(a, p) != 1:
        raise Rm5Error(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x = r1 (mod m1), x = r2 (mod m2) for coprime moduli."""
    k = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * k


def _valuation_unit(x: Fraction, p: int) -> tuple[int, int]:
    """(v_p(x), unit part of x modulo p, or modulo 8 when p = 2)."""
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    mod = 8 if p == 2 else p
    return v, num * pow(den, -1, mod) % mod


def hilbert_symbol(a: Fraction | int, b: Fraction | int, p) -> int:
    """Hilbert symbol (a, b)_p at a prime p or at the place "infinity".

    +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_p (resp. R),
    by the classical explicit formula after extracting p-valuations.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise Rm5Error("hilbert symbol requires nonzero arguments")
    if p == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    p = int(p)
    alpha, u = _valuation_unit(a, p)
    beta, v = _valuation_unit(b, p)
    if p == 2:
        eps_u, eps_v = (u - 1) // 2 % 2, (v - 1) // 2 % 2
        om_u, om_v = (u * u - 1) // 8 % 2, (v * v - 1) // 8 % 2
        return -1 if (eps_u * eps_v + alpha * om_v + beta * om_u) % 2 else 1
    e = alpha * beta * ((p - 1) // 2)
    s = -1 if e % 2 else 1
    if beta % 2:
        s *= legendre_symbol(u, p)
    if alpha % 2:
        s *= legendre_symbol(v, p)
    return s


def relevant_places(values: Iterable[Fraction | int], hint_primes: Iterable[int] = ()) -> list:
    """infinity, 2, and every odd prime dividing any of the given rationals."""
    primes = {2}
    primes.update(p for p in hint_primes if p >= 2)
    for x in values:
        x = Fraction(x)
        for part in (x.numerator, x.denominator):
            if part not in (0, 1, -1):
                primes.update(factor(part, hint_primes).primes())
    return [INFINITY] + sorted(primes)


def is_norm_from_sqrt5(c: Fraction | int, hint_primes: Iterable[int] = ()) -> bool:
    """Decide whether c = u^2 - 5 v^2 for some rational u, v.

    Q(sqrt5) has class number 1 and a fundamental unit of norm -1, so c != 0
    is a norm iff every inert prime (p = 2, 3 mod 5) occurs to an even power
    in the square class of c; split (p = 1, 4 mod 5) and ramified (p = 5)
    primes are themselves norms, as is -1.
    """
    c = Fraction(c)
    if c == 0:
        raise Rm5Error("norm test requires nonzero input")
    f = factor(c.numerator * c.denominator, hint_primes)
    return not any(e % 2 and p % 5 in (2, 3) for p, e in f.factors)


def _sqrt_mod_squarefree(a: int, b: int) -> int:
    """t with t^2 = a (mod b), b > 1 squarefree; primes of gcd(a,b) take t = 0."""
    t, mod = 0, 1
    for p, _ in factor(b).factors:
        if a % p == 0:
            rp = 0
        else:
            rp = sqrt_mod_prime(a % p, p)
        t = crt_pair(t, mod, rp, p)
        mod *= p
    t %= mod
    if t > mod // 2:
        t -= mod
    return t


def _primitive(*xs: int) -> tuple[int, ...]:
    g = 0
    for x in xs:
        g = math.gcd(g, abs(x))
    return tuple(x // g for x in xs)


def solve_z2_eq_axx_byy(a: int, b: int) -> tuple[int, int, int]:
    """Nontrivial primitive integers (z, x, y) with z^2 = a x^2 + b y^2.

    a and b are squarefree and the equation is assumed solvable (check with
    Hilbert symbols first).  Classical Lagrange descent: take a square root t
    of a mod b, write t^2 - a = b c, recurse on (a, squarefree(c)) and combine
    through the norm form of Q(sqrt a).  max(|a|, |b|) strictly decreases, so
    the recursion terminates.
    """
    if a == 1:
        return (1, 1, 0)
    if b == 1:
        return (1, 0, 1)
    if a == b:
        # z^2 = a(x^2 + y^2): x^2 + y^2 = a w^2 via U^2 = -V^2 + a W^2
        u, v, w = solve_z2_eq_axx_byy(-1, a)
        # u^2 = -v^2 + a w^2  =>  u^2 + v^2 = a w^2
        return _primitive(a * w, u, v)
    if a == -b:
        return (0, 1, 1)
    if abs(a) > abs(b):
        z, y, x = solve_z2_eq_axx_byy(b, a)
        return (z, x, y)
    if b == -1:  # then a = -1 as well: negative definite
        raise NormEquationError("negative definite form has no nontrivial zero")
    t = _sqrt_mod_squarefree(a, abs(b))
    if (t * t - a) % b != 0:
        raise NormEquationError("square root mod b failed; form not solvable")
    c = (t * t - a) // b
    if c == 0:  # a = t^2 squarefree forces a = 1, handled above
        raise NormEquationError("unexpected square coefficient")
    c0 = squarefree_part(c)
    f = math.isqrt(c // c0)
    zz, xx, yy = solve_z2_eq_axx_byy(a, c0)
    if yy == 0:  # would mean a is a square
        raise NormEquationError("unexpected degenerate descent solution")
    # N(t + sqrt a) = bc and N(zz + xx sqrt a) = c0 yy^2; multiply the elements
    z2 = t * zz + a * xx
    x2 = t * xx + zz
    y2 = c0 * f * yy
    if z2 * z2 - a * x2 * x2 != b * y2 * y2:
        raise NormEquationError("descent combination failed")  # pragma: no cover
    return _primitive(z2, x2, y2)


def solve_norm_equation(c: Fraction | int) -> Optional[tuple[Fraction, Fraction]]:
    """Exact (u, v) with u^2 - 5 v^2 = c, or None when c is not a norm."""
    c = Fraction(c)
    if c == 0:
        raise Rm5Error("norm equation requires nonzero right-hand side")
    if not is_norm_from_sqrt5(c):
        return None
    c0 = rational_square_class(c)
    r = rational_sqrt(c / c0)
    assert r is not None
    try:
        z, x, y = solve_z2_eq_axx_byy(5, c0)
        if y == 0:
            raise NormEquationError("degenerate solution of the descent")
    except NormEquationError:
        found = norm_sqrt5_brute_search(c, 10**4)
        if found is None:
            raise
        return found
    u = Fraction(z, y) * r
    v = Fraction(x, y) * r
    assert u * u - 5 * v * v == c
    return (u, v)


def norm_sqrt5_brute_search(c: Fraction | int, bound: int) -> Optional[tuple[Fraction, Fraction]]:
    """Search u = i/d, v = j/d with d <= bound, |i|, |j| <= bound.

    Independent oracle for the norm test: i^2 - 5 j^2 = c d^2 over a shared
    denominator.
    """
    c = Fraction(c)
    for d in range(1, bound + 1):
        target = c * d * d
        if target.denominator != 1:
            continue
        tnum = target.numerator
        for j in range(0, bound + 1):
            i2 = tnum + 5 * j * j
            if i2 < 0:
                continue
            i = math.isqrt(i2)
            if i <= bound and i * i == i2:
                return (Fraction(i, d), Fraction(j, d))
    return None
