"""Sparse multivariate polynomials over Q with a declared ordered variable list.

Terms live in a dict from exponent tuples to nonzero Fractions; equality is
structural.  The canonical term order is graded lexicographic on the declared
variable order, which fixes printing and leading-term logic.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .errors import ExactnessError, Rm5Error

Coeff = Union[Fraction, int]


def _grlex_key(expo: tuple[int, ...]) -> tuple:
    return (sum(expo), expo)


class MultiPoly:
    """Polynomial in Q[vars]; immutable by convention."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], Coeff] | None = None):
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise Rm5Error("variable names must be distinct")
        cleaned: dict[tuple[int, ...], Fraction] = {}
        for expo, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            expo = tuple(int(e) for e in expo)
            if len(expo) != len(vs) or any(e < 0 for e in expo):
                raise Rm5Error(f"bad exponent vector {expo} for variables {vs}")
            cleaned[expo] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def const(cls, variables: Iterable[str], c: Coeff) -> "MultiPoly":
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): Fraction(c)})

    @classmethod
    def var(cls, variables: Iterable[str], name: str) -> "MultiPoly":
        vs = tuple(variables)
        if name not in vs:
            raise Rm5Error(f"unknown variable {name!r}")
        expo = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {expo: Fraction(1)})

    @classmethod
    def variables(cls, names: Iterable[str]) -> tuple["MultiPoly", ...]:
        vs = tuple(names)
        return tuple(cls.var(vs, v) for v in vs)

    # -- basics ----------------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise Rm5Error(f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        return MultiPoly.const(self.vars, other)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise Rm5Error("polynomial is not constant")
        return next(iter(self.terms.values()))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def coefficient(self, expo: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(expo), Fraction(0))

    def total_degree(self) -> int:
        """Max total degree; 0 for the zero polynomial (spec convention)."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        if not self.terms:
            return 0
        return max(e[i] for e in self.terms)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise Rm5Error("zero polynomial has no leading term")
        expo = max(self.terms, key=_grlex_key)
        return expo, self.terms[expo]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return MultiPoly.zero(self.vars)
            return MultiPoly(self.vars, {e: cc * c for e, cc in self.terms.items()})
        o = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                raise ZeroDivisionError
            return self * (1 / c)
        return self.exact_div(self._coerce(other))

    def __pow__(self, k: int):
        if k < 0:
            raise Rm5Error("negative powers are not polynomials")
        out = MultiPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_zero() if other == 0 else (self.is_constant() and self.constant_value() == other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- evaluation and substitution ------------------------------------------

    def evaluate(self, point: Mapping[str, Coeff]) -> Fraction:
        vals = []
        for v in self.vars:
            if v not in point:
                raise Rm5Error(f"missing value for variable {v!r}")
            vals.append(Fraction(point[v]))
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for val, k in zip(vals, e):
                if k:
                    t *= val**k
            total += t
        return total

    def substitute(self, mapping: Mapping[str, Union["MultiPoly", Coeff]]) -> "MultiPoly":
        """Substitute some variables by polynomials (same ring) or rationals."""
        images: list[MultiPoly] = []
        for v in self.vars:
            img = mapping.get(v, None)
            if img is None:
                images.append(MultiPoly.var(self.vars, v))
            elif isinstance(img, MultiPoly):
                images.append(self._coerce(img))
            else:
                images.append(MultiPoly.const(self.vars, img))
        powers: list[dict[int, MultiPoly]] = [dict() for _ in self.vars]

        def img_pow(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        out = MultiPoly.zero(self.vars)
        for e, c in self.terms.items():
            t = MultiPoly.const(self.vars, c)
            for i, k in enumerate(e):
                if k:
                    t = t * img_pow(i, k)
            out = out + t
        return out

    def shift(self, offsets: Mapping[str, Coeff]) -> "MultiPoly":
        """Substitute v -> v + offset for each given variable; invertible."""
        mapping = {
            v: MultiPoly.var(self.vars, v) + Fraction(c) for v, c in offsets.items()
        }
        return self.substitute(mapping)

    def rename(self, new_vars: Iterable[str]) -> "MultiPoly":
        nv = tuple(new_vars)
        if len(nv) != len(self.vars):
            raise Rm5Error("rename needs the same number of variables")
        return MultiPoly(nv, dict(self.terms))

    def extend(self, variables: Iterable[str]) -> "MultiPoly":
        """View this polynomial in a larger ring containing all of `variables`."""
        nv = tuple(variables)
        idx = [nv.index(v) for v in self.vars]
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * len(nv)
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        return MultiPoly(nv, out)

    # -- division, content, gcd -------------------------------------------

    def exact_div(self, g: "MultiPoly") -> "MultiPoly":
        q, r = self.div_rem(g)
        if not r.is_zero():
            raise ExactnessError("polynomial division left a remainder")
        return q

    def divides(self, f: "MultiPoly") -> bool:
        _, r = f.div_rem(self)
        return r.is_zero()

    def div_rem(self, g: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Division with remainder by a single divisor under graded lex order."""
        g = self._coerce(g)
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ge, gc = g.leading()
        q: dict[tuple[int, ...], Fraction] = {}
        r: dict[tuple[int, ...], Fraction] = {}
        work = dict(self.terms)
        while work:
            e = max(work, key=_grlex_key)
            c = work.pop(e)
            diff = tuple(a - b for a, b in zip(e, ge))
            if all(d >= 0 for d in diff):
                coeff = c / gc
                q[diff] = q.get(diff, Fraction(0)) + coeff
                for e2, c2 in g.terms.items():
                    if e2 == ge:
                        continue
                    tgt = tuple(a + b for a, b in zip(diff, e2))
                    s = work.get(tgt, Fraction(0)) - coeff * c2
                    if s == 0:
                        work.pop(tgt, None)
                    else:
                        work[tgt] = s
            else:
                r[e] = c
        return MultiPoly(self.vars, q), MultiPoly(self.vars, r)

    def content(self) -> Fraction:
        """Positive rational c with self/c integral, coprime coefficients,
        multiplied by the sign of the leading coefficient."""
        if self.is_zero():
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        c = Fraction(num, den)
        return c if self.leading()[1] > 0 else -c

    def primitive_part(self) -> "MultiPoly":
        if self.is_zero():
            return self
        return self * (1 / self.content())

    def derivative(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return MultiPoly(self.vars, out)

    # -- printing ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append((c, str(abs(c))))
                continue
            if abs(c) == 1:
                parts.append((c, mono))
            else:
                parts.append((c, f"{abs(c)}*{mono}"))
        out = []
        for i, (c, body) in enumerate(parts):
            if i == 0:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(out)

    def __repr__(self):
        return f"MultiPoly({self.vars!r}, {{{', '.join(f'{e}: {c}' for e, c in self.sorted_terms())}}})"


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Multivariate gcd by primitive PRS recursion on the last variable.

    The result is primitive with positive leading coefficient (and monic 1 for
    coprime inputs).  Desk-scale inputs only.
    """
    if f.vars != g.vars:
        raise Rm5Error("gcd needs a common variable list")
    if f.is_zero():
        return g.primitive_part()
    if g.is_zero():
        return f.primitive_part()
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(f.vars, 1)
    used = [i for i in range(len(f.vars)) if f.degree_in(f.vars[i]) or g.degree_in(g.vars[i])]
    if not used:
        return MultiPoly.const(f.vars, 1)
    i = used[-1]
    name = f.vars[i]
    fa, ga = _as_univariate(f, i), _as_univariate(g, i)
    cont_f = _poly_list_gcd(list(fa.values()), f.vars)
    cont_g = _poly_list_gcd(list(ga.values()), f.vars)
    cont = poly_gcd(cont_f, cont_g)
    fp = _univariate_div_content(fa, cont_f)
    gp = _univariate_div_content(ga, cont_g)
    # primitive Euclidean loop on univariate-in-name with MultiPoly coefficients
    while gp:
        fp, gp = gp, _pseudo_rem(fp, gp, f.vars)
        if gp:
            cg = _poly_list_gcd(list(gp.values()), f.vars)
            gp = _univariate_div_content(gp, cg)
    prim = _from_univariate(fp, i, f.vars)
    result = cont * prim
    return result.primitive_part()


def _as_univariate(f: MultiPoly, i: int) -> dict[int, MultiPoly]:
    """f as a dict degree-in-var-i -> coefficient polynomial (var i removed)."""
    out: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for e, c in f.terms.items():
        k = e[i]
        rest = e[:i] + (0,) + e[i + 1 :]
        out.setdefault(k, {})[rest] = c
    return {k: MultiPoly(f.vars, d) for k, d in sorted(out.items())}


def _from_univariate(fa: dict[int, MultiPoly], i: int, vs: tuple[str, ...]) -> MultiPoly:
    total = MultiPoly.zero(vs)
    x = MultiPoly.var(vs, vs[i])
    for k, coeff in fa.items():
        total = total + coeff * x**k
    return total


def _poly_list_gcd(polys: list[MultiPoly], vs: tuple[str, ...]) -> MultiPoly:
    out = MultiPoly.zero(vs)
    for p in polys:
        out = poly_gcd(out, p)
        if out.is_constant() and not out.is_zero():
            return MultiPoly.const(vs, 1)
    return out


def _univariate_div_content(fa: dict[int, MultiPoly], cont: MultiPoly) -> dict[int, MultiPoly]:
    if cont.is_zero():
        return dict(fa)
    return {k: v.exact_div(cont) for k, v in fa.items()}


def _pseudo_rem(fa: dict[int, MultiPoly], ga: dict[int, MultiPoly], vs) -> dict[int, MultiPoly]:
    """Pseudo-remainder of univariate polys with MultiPoly coefficients."""
    if not ga:
        raise ZeroDivisionError
    df = max(fa) if fa else -1
    dg = max(ga)
    if df < dg:
        return dict(fa)
    lead_g = ga[dg]
    work = dict(fa)
    while work and max(work) >= dg:
        dw = max(work)
        lead_w = work.pop(dw)
        # multiply remaining work by lead_g, subtract lead_w * x^(dw-dg) * ga
        work = {k: v * lead_g for k, v in work.items()}
        for k, c in ga.items():
            if k == dg:
                continue
            tgt = dw - dg + k
            cur = work.get(tgt, MultiPoly.zero(vs)) - lead_w * c
            if cur.is_zero():
                work.pop(tgt, None)
            else:
                work[tgt] = cur
    return work


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def parse_poly(text: str, variables: Iterable[str]) -> MultiPoly:
    """Parse '+ - * / ^' expressions with integer literals over the given variables.

    Division is only allowed by integer literals (exact), keeping every parse
    inside Q[vars]; decimals are rejected by construction.
    """
    vs = tuple(variables)
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise Rm5Error(f"cannot tokenize polynomial at: {text[pos:pos+10]!r}")
        tokens.append(mt.group("num") or mt.group("name") or mt.group("op"))
        pos = mt.end()
    out, rest = _parse_sum(tokens, 0, vs)
    if rest != len(tokens):
        raise Rm5Error(f"unexpected trailing tokens: {tokens[rest:]}")
    return out


def _parse_sum(toks, i, vs):
    sign = 1
    if i < len(toks) and toks[i] in "+-":
        sign = -1 if toks[i] == "-" else 1
        i += 1
    term, i = _parse_product(toks, i, vs)
    total = term * sign
    while i < len(toks) and toks[i] in "+-":
        sgn = -1 if toks[i] == "-" else 1
        term, i = _parse_product(toks, i + 1, vs)
        total = total + term * sgn
    return total, i


def _parse_product(toks, i, vs):
    out, i = _parse_power(toks, i, vs)
    while i < len(toks) and toks[i] in "*/":
        op = toks[i]
        nxt, i = _parse_power(toks, i + 1, vs)
        if op == "*":
            out = out * nxt
        else:
            if not nxt.is_constant():
                raise Rm5Error("division only by rational constants")
            out = out * (1 / nxt.constant_value())
    return out, i


def _parse_power(toks, i, vs):
    base, i = _parse_atom(toks, i, vs)
    if i < len(toks) and toks[i] == "^":
        if i + 1 >= len(toks) or not toks[i + 1].isdigit():
            raise Rm5Error("exponent must be a nonnegative integer literal")
        return base ** int(toks[i + 1]), i + 2
    return base, i


def _parse_atom(toks, i, vs):
    if i >= len(toks):
        raise Rm5Error("unexpected end of polynomial expression")
    t = toks[i]
    if t == "(":
        inner, j = _parse_sum(toks, i + 1, vs)
        if j >= len(toks) or toks[j] != ")":
            raise Rm5Error("unbalanced parentheses")
        return inner, j + 1
    if t == "-":
        inner, j = _parse_atom(toks, i + 1, vs)
        return -inner, j
    if t.isdigit():
        return MultiPoly.const(vs, int(t)), i + 1
    if t in vs:
        return MultiPoly.var(vs, t), i + 1
    raise Rm5Error(f"unknown symbol {t!r} (variables are {vs})")
