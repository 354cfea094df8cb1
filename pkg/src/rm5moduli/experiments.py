"""Randomized equivalence experiment for the conic-obstruction polynomials.

For each sampled chart point the Mestre conic of the provided invariant
formulas is compared, up to invertible scaling over Q, against
x1^2 - D x2^2 - p_D(m, n) x3^2.  For D = 5 the match on nonsingular samples
is a theorem; for D in {8, 12, 13, 17} the invariant formulas are
user-supplied data and failures are reported, never asserted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import Rm5Error
from .invariants import IgusaClebsch, clebsch_from_ic, ic_from_mn
from .mestre import TernaryQF, mestre_conic
from .multipoly import MultiPoly, parse_poly
from .qf_reduce import forms_equivalent_over_Q

SUPPORTED_D = (5, 8, 12, 13, 17)

_PD_TEXT = {
    5: "0 - m^2 + 5*n^2 + 5",
    8: "m + 1",
    12: "0 - 27*m^2 + n^2 + 27",
    13: "1803*m^2 - 72*m*n + n^2 + 3168*m - 1440*n - 768",
    17: "1",
}


def pd_polynomial(d: int, vs=("m", "n")) -> MultiPoly:
    """The obstruction polynomial p_D in Q[m, n]."""
    if d not in _PD_TEXT:
        raise Rm5Error(f"no obstruction polynomial for D = {d}")
    return parse_poly(_PD_TEXT[d], vs)


@dataclass(frozen=True)
class ICProvider:
    """Four invariant polynomials in (m, n) plus their discriminant tag."""

    d: int
    i2: MultiPoly
    i4: MultiPoly
    i6: MultiPoly
    i10: MultiPoly
    provenance: str = "external"

    def invariants_at(self, m: Fraction, n: Fraction) -> IgusaClebsch:
        point = {"m": m, "n": n}
        return IgusaClebsch(
            self.i2.evaluate(point),
            self.i4.evaluate(point),
            self.i6.evaluate(point),
            self.i10.evaluate(point),
        )


def builtin_d5_provider() -> ICProvider:
    """The built-in invariant formulas of the (m, n) chart (D = 5 only)."""
    vs = ("m", "n")
    m = MultiPoly.var(vs, "m")
    n = MultiPoly.var(vs, "n")
    ic = ic_from_mn(m, n)
    return ICProvider(5, ic.i2, ic.i4, ic.i6, ic.i10, provenance="builtin-D5")


@dataclass
class ExperimentReport:
    d: int
    samples: int
    height: int
    seed: int
    provider: str
    passes: int = 0
    fails: int = 0
    skips: int = 0
    failures: list = field(default_factory=list)  # (index, m, n)
    skipped: list = field(default_factory=list)  # (index, m, n, reason)

    def to_text(self, version: str = "rm5moduli 0.1.0") -> str:
        lines = [
            f"# {version} conic-equivalence experiment",
            f"# D = {self.d}  samples = {self.samples}  height = {self.height}  seed = {self.seed}",
            f"# provider = {self.provider}",
            "# sampling: numerator uniform in [-H, H], denominator uniform in [1, H], reduced",
            f"pass {self.passes}",
            f"fail {self.fails}",
            f"skip {self.skips}",
        ]
        for idx, m, n in self.failures:
            lines.append(f"FAIL sample {idx}: m = {m}, n = {n}")
        for idx, m, n, reason in self.skipped:
            lines.append(f"skip sample {idx}: m = {m}, n = {n} ({reason})")
        return "\n".join(lines)


def run_pd_experiment(
    d: int,
    samples: int,
    height: int,
    provider: Optional[ICProvider] = None,
    seed: int = 0,
) -> ExperimentReport:
    """Deterministic seeded experiment; sequential, keyed by sample index."""
    if d not in SUPPORTED_D:
        raise Rm5Error(f"D must be one of {SUPPORTED_D}")
    if provider is None:
        if d != 5:
            raise Rm5Error(f"provider required: only D = 5 has built-in invariants")
        provider = builtin_d5_provider()
    if provider.d != d:
        raise Rm5Error(f"provider is for D = {provider.d}, not {d}")
    pd = pd_polynomial(d)
    rng = random.Random(seed)
    report = ExperimentReport(d, samples, height, seed, provider.provenance)
    for idx in range(samples):
        m = Fraction(rng.randint(-height, height), rng.randint(1, height))
        n = Fraction(rng.randint(-height, height), rng.randint(1, height))
        point = {"m": m, "n": n}
        pdval = pd.evaluate(point)
        try:
            ic = provider.invariants_at(m, n)
        except Rm5Error:
            report.skips += 1
            report.skipped.append((idx, m, n, "invariants all zero"))
            continue
        conic = mestre_conic(clebsch_from_ic(ic))
        if conic.is_singular() or pdval == 0:
            report.skips += 1
            report.skipped.append((idx, m, n, "singular conic"))
            continue
        target = TernaryQF.diagonal(Fraction(1), Fraction(-d), -pdval)
        hints = _hints_for(d, m, n, pdval)
        if forms_equivalent_over_Q(conic, target, hints=hints):
            report.passes += 1
        else:
            report.fails += 1
            report.failures.append((idx, m, n))
    return report


def _hints_for(d: int, m: Fraction, n: Fraction, pdval: Fraction) -> list:
    hints = [m.numerator, m.denominator, n.numerator, n.denominator, pdval]
    if d == 5:
        q = m * m - 5 * n * n
        hints += [n, q, q - 5, q - 9]
        # structured discriminant pieces of the chart conic
        g = (q - 9) / 30
        h = m * q * (q - 5) / 12500 + Fraction(9, 6250) * (250 * g * g + 75 * g + 6)
        hints += [x for x in (h, 8 * h - 9 * g * g) if x != 0]
    return [h for h in hints if h not in (0,)]
