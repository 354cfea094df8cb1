"""Elements a + b*sqrt(d) of a real quadratic extension of Q.

The paper's core only needs d = 5, but the arithmetic is uniform in any
squarefree d.  Elements are immutable; mixing distinct d raises.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

from .arith import factor, rational_nth_root, rational_sqrt, squarefree_part
from .errors import Rm5Error

Scalar = Union[Fraction, int, "QuadExtElem"]


class QuadExtElem:
    """a + b*sqrt(d) with rational a, b and a fixed squarefree d."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int = 5):
        if d in (0, 1) or squarefree_part(d) != d:
            raise Rm5Error(f"d = {d} must be squarefree and not 0 or 1")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, *_):
        raise AttributeError("QuadExtElem is immutable")

    @classmethod
    def from_rational(cls, x, d: int = 5) -> "QuadExtElem":
        return cls(Fraction(x), 0, d)

    def _coerce(self, other) -> "QuadExtElem":
        if isinstance(other, QuadExtElem):
            if other.d != self.d:
                raise Rm5Error(f"cannot mix sqrt({self.d}) with sqrt({other.d})")
            return other
        return QuadExtElem(Fraction(other), 0, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExtElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadExtElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadExtElem(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        return self * QuadExtElem(o.a / n, -o.b / n, self.d)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return QuadExtElem(-self.a, -self.b, self.d)

    def __pow__(self, k: int):
        if k < 0:
            return QuadExtElem(1, 0, self.d) / self ** (-k)
        out = QuadExtElem(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadExtElem):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadExtElem({self.a!r}, {self.b!r}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        tail = f"sqrt{self.d}" if abs(self.b) == 1 else f"{abs(self.b)}*sqrt{self.d}"
        sign = "+" if self.b > 0 else "-"
        if self.a == 0:
            return tail if self.b > 0 else f"-{tail}"
        return f"{self.a} {sign} {tail}"

    def conjugate(self) -> "QuadExtElem":
        return QuadExtElem(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def rational_value(self) -> Fraction:
        if self.b != 0:
            raise Rm5Error("element has a nonzero irrational part")
        return self.a


def sqrt5(a=0, b=1) -> QuadExtElem:
    """Shorthand for a + b*sqrt(5)."""
    return QuadExtElem(a, b, 5)


def norm(x: QuadExtElem) -> Fraction:
    return x.norm()


def trace(x: QuadExtElem) -> Fraction:
    return x.trace()


def qe_sqrt(x: QuadExtElem) -> Optional[QuadExtElem]:
    """A square root of x inside Q(sqrt d), if one exists.

    y = c + e*sqrt(d) solves y^2 = x iff c^2 = (a +- sqrt(norm x))/2 is a
    rational square (then e = b/(2c)); rational x needs x or x/d square.
    """
    a, b, d = x.a, x.b, x.d
    if b == 0:
        r = rational_sqrt(a)
        if r is not None:
            return QuadExtElem(r, 0, d)
        r = rational_sqrt(a / d)
        if r is not None:
            return QuadExtElem(0, r, d)
        return None
    disc = rational_sqrt(a * a - d * b * b)
    if disc is None:
        return None
    for s in (disc, -disc):
        c = rational_sqrt((a + s) / 2)
        if c is not None and c != 0:
            y = QuadExtElem(c, b / (2 * c), d)
            if y * y == x:
                return y
    return None


def qe_nth_root(x: QuadExtElem, k: int) -> Optional[QuadExtElem]:
    """A k-th root of x inside Q(sqrt d) for k in {1, 2, 3, 5}, if one exists.

    For odd k a rational x forces a rational root.  Otherwise a root y has
    norm N with N^k = norm(x) (a rational k-th root) and trace T satisfying
    Tr(x) = a_k(T, N) T + 2 b_k(T, N), where y^j = a_j y + b_j is the power
    recurrence under y^2 = T y - N; that is a degree-k rational polynomial in
    T with finitely many candidate rational roots.
    """
    if k == 1:
        return x
    if k == 2:
        return qe_sqrt(x)
    if k not in (3, 5):
        raise Rm5Error(f"k = {k} not supported (weights only need 2, 3, 5)")
    if x.is_zero():
        return QuadExtElem(0, 0, x.d)
    if x.is_rational():
        r = rational_nth_root(x.a, k)
        return None if r is None else QuadExtElem(r, 0, x.d)
    N = rational_nth_root(x.norm(), k)
    if N is None:
        return None
    a_j, b_j = [Fraction(1)], [Fraction(0)]  # coefficient lists in T
    for _ in range(k - 1):
        a_next = _poladd([Fraction(0)] + a_j, b_j)
        b_next = [-N * c for c in a_j]
        a_j, b_j = a_next, b_next
    lhs = _poladd([Fraction(0)] + a_j, [2 * c for c in b_j])
    lhs[0] -= x.trace()
    for T0 in _rational_roots(lhs):
        ak = sum(c * T0**i for i, c in enumerate(a_j))
        if ak == 0:
            continue
        bk = sum(c * T0**i for i, c in enumerate(b_j))
        y = (x - bk) / ak
        if y**k == x:
            return y
    return None


def _poladd(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    n = max(len(p), len(q))
    return [
        (p[i] if i < len(p) else Fraction(0)) + (q[i] if i < len(q) else Fraction(0))
        for i in range(n)
    ]


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor(n).factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(set(divs))


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All rational roots of sum coeffs[i] t^i (rational root theorem)."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if not coeffs:
        raise Rm5Error("zero polynomial has every root")
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    low = 0
    while ints[low] == 0:
        low += 1
    roots = [Fraction(0)] if low > 0 else []
    ints = ints[low:]
    if len(ints) == 1:
        return roots
    seen = set()
    for p in _divisors(abs(ints[0])):
        for q in _divisors(abs(ints[-1])):
            for sgn in (1, -1):
                cand = Fraction(sgn * p, q)
                if cand in seen:
                    continue
                seen.add(cand)
                if sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    roots.append(cand)
    return roots
