"""Conditioning analysis for lifting cascades.

A lifting matrix with filter S has condition number
1 + |S|^2/2 + sqrt(|S|^2 + |S|^4/4) in terms of the sup of |S| on the unit
circle; diagonal gains contribute max|k|/min|k| and delays/swaps are allpass
(condition 1).  Exact scalars are embedded into floats here; conditioning is
inherently numeric.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .pmat import Cascade
from .poly import CausalPoly

SAMPLES = 4096
_GOLDEN = (math.sqrt(5) - 1) / 2


def linf_norm(S: CausalPoly) -> float:
    """sup of |S(z)| over |z| = 1.

    Exact |a| + |b| for degree <= 1 (the bound is sharp there); otherwise a
    dense circle sampling refined by golden-section search around the best
    sample."""
    if S.is_zero():
        return 0.0
    coeffs = [S.ctx.to_float(c) for c in S.coeffs]
    if len(coeffs) <= 2:
        return sum(abs(c) for c in coeffs)

    def mag(theta):
        z = cmath.exp(1j * theta)
        return abs(sum(c * z ** -n for n, c in enumerate(coeffs)))

    step = 2 * math.pi / SAMPLES
    best_k = max(range(SAMPLES), key=lambda k: mag(k * step))
    lo, hi = (best_k - 1) * step, (best_k + 1) * step
    # golden-section: maximize mag on [lo, hi]
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = mag(c), mag(d)
    for _ in range(80):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = mag(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = mag(d)
    return max(mag((a + b) / 2), mag(lo), mag(hi))


def coeff_sum_bound(S: CausalPoly) -> float:
    """Upper bound sum |s(n)| >= linf norm; sharp for degree <= 1."""
    return S.coeff_abs_sum()


def lifting_cond(S: CausalPoly) -> float:
    s2 = linf_norm(S) ** 2
    return 1 + s2 / 2 + math.sqrt(s2 + s2 * s2 / 4)


def gain_cond(k0, k1, ctx) -> float:
    a, b = abs(ctx.to_float(k0)), abs(ctx.to_float(k1))
    return max(a, b) / min(a, b)


@dataclass(frozen=True)
class FactorConditioning:
    index: int
    norm_sq: float
    cond: float


@dataclass(frozen=True)
class ConditionReport:
    factors: tuple
    gain_cond: float
    product: float

    def to_json(self):
        return {
            "factors": [
                {"index": f.index, "norm_sq": f.norm_sq, "cond": f.cond}
                for f in self.factors
            ],
            "gain_cond": self.gain_cond,
            "product": self.product,
        }

    def to_text(self):
        lines = [f"{'step':>4}  {'|U|_inf^2':>12}  {'cond':>12}"]
        for f in self.factors:
            lines.append(f"{f.index:>4}  {f.norm_sq:>12.6g}  {f.cond:>12.6f}")
        lines.append(f"gain cond = {self.gain_cond:.6g}")
        lines.append(f"conditioning product = {self.product:.4g}")
        return "\n".join(lines)


def cascade_conditioning(c: Cascade) -> ConditionReport:
    """Product of per-factor condition numbers; delays and swaps are allpass
    and contribute 1."""
    factors = []
    product = 1.0
    for n, s in enumerate(c.steps):
        norm = linf_norm(s.filt)
        cond = lifting_cond(s.filt)
        factors.append(FactorConditioning(n, norm * norm, cond))
        product *= cond
    g = gain_cond(c.gains[0], c.gains[1], c.ctx)
    return ConditionReport(tuple(factors), g, product * g)
