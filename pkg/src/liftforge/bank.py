"""Filter banks, polyphase conversion, builtin example banks, and
signal-domain analysis/synthesis through lifting cascades.

Polyphase-with-delay convention: H_i(z) = H_i0(z^2) + z^-1 H_i1(z^2), i.e.
the even-indexed impulse-response taps form the first polyphase component
and the odd-indexed taps the second.  The odd input phase is taken with a
one-sample delay, x_1(m) = x(2m - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownName
from .field import QuadraticContext, Quadratic, RATIONAL
from .pmat import Cascade, Delay, Gain, Lift, Perm, PolyMatrix2, pr_check
from .poly import CausalPoly


@dataclass(frozen=True)
class FilterBank:
    h0: CausalPoly
    h1: CausalPoly

    @property
    def ctx(self):
        return self.h0.ctx


def to_polyphase(b: FilterBank) -> PolyMatrix2:
    ctx = b.ctx
    rows = []
    for h in (b.h0, b.h1):
        even = CausalPoly(h.coeffs[0::2], ctx)
        odd = CausalPoly(h.coeffs[1::2], ctx)
        rows.append((even, odd))
    return PolyMatrix2(rows)


def from_polyphase(H: PolyMatrix2) -> FilterBank:
    pr_check(H)
    ctx = H.ctx
    taps = []
    for i in range(2):
        even, odd = H[i, 0], H[i, 1]
        n = max(2 * len(even.coeffs) - 1 if even.coeffs else 0,
                2 * len(odd.coeffs) if odd.coeffs else 0)
        h = [ctx.zero] * n
        for k, c in enumerate(even.coeffs):
            h[2 * k] = c
        for k, c in enumerate(odd.coeffs):
            h[2 * k + 1] = c
        taps.append(CausalPoly(h, ctx))
    return FilterBank(taps[0], taps[1])


# ---------------------------------------------------------------------------
# builtin banks


def _rat_poly(*fracs):
    return CausalPoly([RATIONAL.from_fraction(Fraction(f)) for f in fracs],
                      RATIONAL)


def cdf75_matrix() -> PolyMatrix2:
    """Causal 7-tap/5-tap cubic B-spline analysis polyphase matrix."""
    return PolyMatrix2((
        (_rat_poly("3/32", "5/32", "5/32", "3/32"),
         _rat_poly("-3/8", "5/4", "-3/8")),
        (_rat_poly("1/8", "3/4", "1/8"),
         _rat_poly("-1/2", "-1/2")),
    ))


def daub44_matrix() -> PolyMatrix2:
    """Paraunitary Daubechies 4-tap/4-tap analysis matrix over Q(sqrt(3)),
    normalized so the lowpass filter sums to one."""
    ctx = QuadraticContext(3)

    def q(a, b):
        return Quadratic(Fraction(a), Fraction(b), 3)

    def p(c0, c1):
        return CausalPoly([c0, c1], ctx)

    return PolyMatrix2((
        (p(q("1/8", "1/8"), q("3/8", "-1/8")),
         p(q("3/8", "1/8"), q("1/8", "-1/8"))),
        (p(q("-1/4", "1/4"), q("-3/4", "-1/4")),
         p(q("3/4", "-1/4"), q("1/4", "1/4"))),
    ))


def lgt53_matrix() -> PolyMatrix2:
    """Causal polyphase matrix of the 5-tap/3-tap LeGall-Tabatabai bank."""
    return PolyMatrix2((
        (_rat_poly("-1/8", "3/4", "-1/8"), _rat_poly("1/4", "1/4")),
        (_rat_poly("-1/2", "-1/2"), _rat_poly(1)),
    ))


def nondoublejust_matrix() -> PolyMatrix2:
    """A PR bank that is not equivalent modulo delays to a doubly left
    justified one."""
    return PolyMatrix2((
        (_rat_poly(2, 1), _rat_poly(1)),
        (_rat_poly(0, 1), _rat_poly(1)),
    ))


_BUILTINS = {
    "cdf75": cdf75_matrix,
    "daub44": daub44_matrix,
    "lgt53": lgt53_matrix,
    "nondoublejust": nondoublejust_matrix,
}


def builtin(name: str) -> FilterBank:
    key = name.replace("(", "").replace(")", "").replace(",", "").lower()
    if key not in _BUILTINS:
        raise UnknownName(
            f"unknown builtin bank {name!r}; choose from {sorted(_BUILTINS)}")
    return from_polyphase(_BUILTINS[key]())


def builtin_names():
    return sorted(_BUILTINS)


# ---------------------------------------------------------------------------
# signals


@dataclass(frozen=True)
class Signal:
    """Finite-support signal; samples[k] sits at time origin + k."""

    samples: tuple
    origin: int = 0

    @classmethod
    def from_values(cls, values, ctx, origin=0):
        return cls(tuple(ctx.from_fraction(Fraction(v)) for v in values),
                   origin).trimmed(ctx)

    def trimmed(self, ctx):
        samples = list(self.samples)
        origin = self.origin
        while samples and ctx.is_zero(samples[0]):
            samples.pop(0)
            origin += 1
        while samples and ctx.is_zero(samples[-1]):
            samples.pop()
        if not samples:
            return Signal((), 0)
        return Signal(tuple(samples), origin)

    def at(self, n, zero):
        k = n - self.origin
        if 0 <= k < len(self.samples):
            return self.samples[k]
        return zero

    def is_zero(self):
        return not self.samples


def _sig_zero():
    return Signal((), 0)


def convolve(f: CausalPoly, x: Signal) -> Signal:
    ctx = f.ctx
    if f.is_zero() or x.is_zero():
        return _sig_zero()
    out = [ctx.zero] * (len(f.coeffs) + len(x.samples) - 1)
    for i, c in enumerate(f.coeffs):
        if ctx.is_zero(c):
            continue
        for j, s in enumerate(x.samples):
            out[i + j] = out[i + j] + c * s
    return Signal(tuple(out), x.origin).trimmed(ctx)


def sig_add(a: Signal, b: Signal, ctx) -> Signal:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    lo = min(a.origin, b.origin)
    hi = max(a.origin + len(a.samples), b.origin + len(b.samples))
    vals = [a.at(n, ctx.zero) + b.at(n, ctx.zero) for n in range(lo, hi)]
    return Signal(tuple(vals), lo).trimmed(ctx)


def sig_scale(x: Signal, scalar, ctx) -> Signal:
    return Signal(tuple(s * scalar for s in x.samples), x.origin).trimmed(ctx)


def sig_shift(x: Signal, k) -> Signal:
    return Signal(x.samples, x.origin + k)


def split_phases(x: Signal, ctx):
    """Even phase x(2m) and delayed odd phase x(2m-1)."""
    if x.is_zero():
        return _sig_zero(), _sig_zero()
    lo = x.origin
    hi = x.origin + len(x.samples)
    even = {}
    odd = {}
    for n in range(lo, hi):
        v = x.at(n, ctx.zero)
        if n % 2 == 0:
            even[n // 2] = v
        else:
            odd[(n + 1) // 2] = v
    return _from_dict(even, ctx), _from_dict(odd, ctx)


def merge_phases(even: Signal, odd: Signal, ctx) -> Signal:
    vals = {}
    for m in range(even.origin, even.origin + len(even.samples)):
        vals[2 * m] = even.at(m, ctx.zero)
    for m in range(odd.origin, odd.origin + len(odd.samples)):
        vals[2 * m - 1] = odd.at(m, ctx.zero)
    return _from_dict(vals, ctx)


def _from_dict(vals, ctx):
    if not vals:
        return _sig_zero()
    lo, hi = min(vals), max(vals)
    return Signal(tuple(vals.get(n, ctx.zero) for n in range(lo, hi + 1)),
                  lo).trimmed(ctx)


def _apply_factor(f, pair, ctx, inverse=False):
    a, b = pair
    if isinstance(f, Lift):
        filt = -f.filt if inverse else f.filt
        if f.chi == 0:
            return sig_add(a, convolve(filt, b), ctx), b
        return a, sig_add(b, convolve(filt, a), ctx)
    if isinstance(f, Delay):
        k = -f.m if inverse else f.m
        return (sig_shift(a, k), b) if f.chi == 0 else (a, sig_shift(b, k))
    if isinstance(f, Gain):
        k0, k1 = f.k0, f.k1
        if inverse:
            k0, k1 = ctx.one / k0, ctx.one / k1
        return sig_scale(a, k0, ctx), sig_scale(b, k1, ctx)
    if isinstance(f, Perm):
        return (b, a) if f.kind == "J" else (a, b)
    raise TypeError(f"not a cascade factor: {f!r}")


def _cascade_ordered_factors(c: Cascade):
    out = []
    rho0, rho1 = c.row_delays
    if rho0:
        out.append(Delay(0, rho0))
    if rho1:
        out.append(Delay(1, rho1))
    out.extend(c.factors())
    c0, c1 = c.col_delays
    if c0:
        out.append(Delay(0, c0))
    if c1:
        out.append(Delay(1, c1))
    return out


def analyze(transform, x: Signal):
    """Split a signal into the two subbands.

    transform is a FilterBank (direct polyphase-matrix application) or a
    Cascade (lifting ladder, factors applied right to left)."""
    if isinstance(transform, FilterBank):
        H = to_polyphase(transform)
        ctx = H.ctx
        e, o = split_phases(x, ctx)
        y0 = sig_add(convolve(H[0, 0], e), convolve(H[0, 1], o), ctx)
        y1 = sig_add(convolve(H[1, 0], e), convolve(H[1, 1], o), ctx)
        return y0, y1
    ctx = transform.ctx
    pair = split_phases(x, ctx)
    for f in reversed(_cascade_ordered_factors(transform)):
        pair = _apply_factor(f, pair, ctx)
    return pair


def synthesize(transform, y0: Signal, y1: Signal) -> Signal:
    """Exact inverse of analyze: every lifting factor inverts by negating its
    filter, delays invert as advances, gains by reciprocals, J by itself."""
    if isinstance(transform, FilterBank):
        H = to_polyphase(transform)
        ctx = H.ctx
        a_hat, d_hat = pr_check(H)
        inv = ctx.one / a_hat
        e = sig_scale(sig_add(convolve(H[1, 1], y0),
                              sig_scale(convolve(H[0, 1], y1), -ctx.one, ctx),
                              ctx), inv, ctx)
        o = sig_scale(sig_add(convolve(H[1, 0], y0),
                              sig_scale(convolve(H[0, 0], y1), -ctx.one, ctx),
                              ctx), -inv, ctx)
        e, o = sig_shift(e, -d_hat), sig_shift(o, -d_hat)
        return merge_phases(e, o, ctx)
    ctx = transform.ctx
    pair = (y0, y1)
    for f in _cascade_ordered_factors(transform):
        pair = _apply_factor(f, pair, ctx, inverse=True)
    return merge_phases(pair[0], pair[1], ctx)


def apply_matrix(H: PolyMatrix2, pair):
    ctx = H.ctx
    a, b = pair
    return (sig_add(convolve(H[0, 0], a), convolve(H[0, 1], b), ctx),
            sig_add(convolve(H[1, 0], a), convolve(H[1, 1], b), ctx))


# ---------------------------------------------------------------------------
# JSON forms


def bank_to_json(b: FilterBank) -> dict:
    return {
        "h0": b.h0.to_coeff_strings(),
        "h1": b.h1.to_coeff_strings(),
        "field": b.ctx.spec(),
    }


def bank_from_json(data: dict) -> FilterBank:
    from .field import context_from_spec

    ctx = context_from_spec(data.get("field", "rational"))
    return FilterBank(CausalPoly.from_coeff_strings(data["h0"], ctx),
                      CausalPoly.from_coeff_strings(data["h1"], ctx))
