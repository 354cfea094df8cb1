"""Univariate polynomial helpers over any exact field (Fraction or QuadExtElem).

Polynomials are plain lists of coefficients, index = degree.  These helpers
stay deliberately dumb: callers manage degree bookkeeping.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .errors import Rm5Error


def trim(p: list) -> list:
    while p and _is_zero(p[-1]):
        p.pop()
    return p


def _is_zero(c) -> bool:
    return c == 0


def degree(p: Sequence) -> int:
    for i in range(len(p) - 1, -1, -1):
        if not _is_zero(p[i]):
            return i
    return -1


def add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        if i < len(p) and i < len(q):
            out.append(p[i] + q[i])
        elif i < len(p):
            out.append(p[i])
        else:
            out.append(q[i])
    return trim(out)


def scale(p: Sequence, c) -> list:
    return trim([ci * c for ci in p])


def mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if _is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def power(p: Sequence, k: int) -> list:
    out = [_one_like(p)]
    base = list(p)
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def _one_like(p: Sequence):
    for c in p:
        if not _is_zero(c):
            return c / c
    return Fraction(1)


def derivative(p: Sequence) -> list:
    return trim([p[i] * i for i in range(1, len(p))])


def evaluate(p: Sequence, x):
    total = 0
    for c in reversed(list(p)):
        total = total * x + c
    return total


def monic_gcd(p: Sequence, q: Sequence) -> list:
    """gcd over a field, normalized monic (or [] for gcd of zeros)."""
    a, b = trim(list(p)), trim(list(q))
    while b:
        a, b = b, _rem(a, b)
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def _rem(a: list, b: list) -> list:
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        c = a[-1] / lead
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a = trim(a)
        if not a:
            break
    return a


def resultant(p: Sequence, q: Sequence):
    """Resultant via Gaussian elimination on the Sylvester matrix (exact field)."""
    p, q = trim(list(p)), trim(list(q))
    dp, dq = len(p) - 1, len(q) - 1
    if dp < 0 or dq < 0:
        raise Rm5Error("resultant of the zero polynomial")
    n = dp + dq
    rows = []
    for i in range(dq):
        row = [0] * n
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(dp):
        row = [0] * n
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    det = _one_like(p + list(q))
    sign = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not _is_zero(rows[r][col]):
                piv = r
                break
        if piv is None:
            return det * 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        pivval = rows[col][col]
        det = det * pivval
        inv = _one_like([pivval]) / pivval
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if _is_zero(f):
                continue
            for cc in range(col, n):
                rows[r][cc] = rows[r][cc] - f * rows[col][cc]
    return det * sign


def discriminant_sextic(coeffs: Sequence):
    """Discriminant of the binary sextic with dehomogenized coefficients c0..c6.

    For degree 6 this is -Res(f, f')/c6; a degree-5 polynomial is the binary
    sextic with a root at infinity, giving c5^2 * disc(quintic).
    """
    c = trim(list(coeffs))
    d = len(c) - 1
    if d == 6:
        r = resultant(c, derivative(c))
        return r / c[6] * (-1)
    if d == 5:
        r = resultant(c, derivative(c))
        return c[5] * c[5] * (r / c[5])
    raise Rm5Error(f"degree {d} is not a genus-2 sextic model")


def squarefree(coeffs: Sequence) -> bool:
    p = trim(list(coeffs))
    if len(p) - 1 < 1:
        return False
    g = monic_gcd(p, derivative(p))
    return len(g) == 1
