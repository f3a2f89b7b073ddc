"""2x2 causal transfer matrices and the cascade algebra.

Factor lists produced by the factorization drivers are brought into standard
causal lifting form here: gains move to the left end (rescaling the lifting
filters they cross), swaps move to the right end (conjugating what they
cross), and adjacent same-characteristic lifting steps merge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InvalidCoprimification,
    MixedRealizations,
    NonPRInput,
    NotPerfectReconstruction,
)
from .poly import CausalPoly, monomial_gcd, parse_poly, scale_counted


class PolyMatrix2:
    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("expected a 2x2 matrix")
        ctx = rows[0][0].ctx
        for r in rows:
            for p in r:
                if p.ctx != ctx:
                    raise MixedRealizations("matrix entries over mixed contexts")
        self.rows = rows

    @property
    def ctx(self):
        return self.rows[0][0].ctx

    @classmethod
    def identity(cls, ctx):
        one, zero = CausalPoly.one(ctx), CausalPoly.zero(ctx)
        return cls(((one, zero), (zero, one)))

    @classmethod
    def swap(cls, ctx):
        one, zero = CausalPoly.one(ctx), CausalPoly.zero(ctx)
        return cls(((zero, one), (one, zero)))

    @classmethod
    def diag(cls, p0, p1):
        zero = CausalPoly.zero(p0.ctx)
        return cls(((p0, zero), (zero, p1)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return (self.rows[0][j], self.rows[1][j])

    def __matmul__(self, other):
        a, b = self.rows, other.rows
        return PolyMatrix2(tuple(
            tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2))
            for i in range(2)))

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix2):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        r = self.rows
        return (f"[[{r[0][0].to_text()}, {r[0][1].to_text()}], "
                f"[{r[1][0].to_text()}, {r[1][1].to_text()}]]")

    def determinant(self):
        return self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]

    def to_strings(self):
        return [[p.to_text() for p in row] for row in self.rows]

    @classmethod
    def from_strings(cls, rows, ctx):
        return cls(tuple(tuple(parse_poly(s, ctx) for s in row) for row in rows))


def determinant(H: PolyMatrix2) -> CausalPoly:
    return H.determinant()


def pr_check(H: PolyMatrix2):
    """Extract (a_hat, d_hat) with det = a_hat * z^-d_hat, or fail."""
    det = H.determinant()
    if det.is_zero() or not det.is_monomial():
        raise NotPerfectReconstruction(
            f"determinant {det.to_text()} is not a nonzero monomial")
    d_hat = det.degree()
    return det.coeff(d_hat), d_hat


def _strip_rows(H):
    mults = []
    rows = []
    for i in range(2):
        m = monomial_gcd(H.row(i))
        mults.append(m)
        rows.append(tuple(p.shift(-m) for p in H.row(i)))
    return tuple(mults), PolyMatrix2(rows)


def _strip_cols(H):
    m0 = monomial_gcd(H.col(0))
    m1 = monomial_gcd(H.col(1))
    rows = tuple((H[i, 0].shift(-m0), H[i, 1].shift(-m1)) for i in range(2))
    return (m0, m1), PolyMatrix2(rows)


def coprimify(H: PolyMatrix2, order="rows_first", explicit=None):
    """Strip monomial common divisors so all rows and columns are coprime.

    Returns (rho0, rho1, c0, c1, Q0) with
    diag(z^-rho) * Q0 * diag(z^-c) = H.  Common divisors of rows/columns of a
    PR matrix always divide the monomial determinant, so only monomial
    factors need stripping.
    """
    pr_check(H)
    if explicit is not None:
        rho0, rho1, c0, c1 = explicit
        if min(rho0, rho1, c0, c1) < 0:
            raise InvalidCoprimification("delays must be nonnegative")
        try:
            rows = tuple(
                tuple(H[i, j].shift(-(rho0, rho1)[i]).shift(-(c0, c1)[j])
                      for j in range(2)) for i in range(2))
        except ValueError:
            raise InvalidCoprimification(
                "explicit delays leave a non-causal quotient")
        Q0 = PolyMatrix2(rows)
        for i in range(2):
            if monomial_gcd(Q0.row(i)) != 0:
                raise InvalidCoprimification(f"row {i} not coprime")
        for j in range(2):
            if monomial_gcd(Q0.col(j)) != 0:
                raise InvalidCoprimification(f"column {j} not coprime")
        return rho0, rho1, c0, c1, Q0
    if order == "rows_first":
        (rho0, rho1), Q = _strip_rows(H)
        (c0, c1), Q = _strip_cols(Q)
    elif order == "cols_first":
        (c0, c1), Q = _strip_cols(H)
        (rho0, rho1), Q = _strip_rows(Q)
    else:
        raise ValueError(f"unknown coprimification order {order!r}")
    return rho0, rho1, c0, c1, Q


# ---------------------------------------------------------------------------
# cascade factors


@dataclass(frozen=True)
class Lift:
    """Elementary lifting matrix; chi = 0 upper-triangular, 1 lower."""
    chi: int
    filt: CausalPoly

    def __post_init__(self):
        if self.filt.is_zero():
            raise ValueError("lifting filter must be nonzero")


@dataclass(frozen=True)
class Delay:
    """diag(z^-m, 1) for chi = 0, diag(1, z^-m) for chi = 1."""
    chi: int
    m: int


@dataclass(frozen=True)
class Gain:
    k0: object
    k1: object


@dataclass(frozen=True)
class Perm:
    kind: str = "J"  # "I" is never stored explicitly


CascadeFactor = Lift | Delay | Gain | Perm


def factor_matrix(f, ctx) -> PolyMatrix2:
    one, zero = CausalPoly.one(ctx), CausalPoly.zero(ctx)
    if isinstance(f, Lift):
        if f.chi == 0:
            return PolyMatrix2(((one, f.filt), (zero, one)))
        return PolyMatrix2(((one, zero), (f.filt, one)))
    if isinstance(f, Delay):
        d = CausalPoly.monomial(ctx.one, f.m, ctx)
        return PolyMatrix2.diag(d, one) if f.chi == 0 else PolyMatrix2.diag(one, d)
    if isinstance(f, Gain):
        return PolyMatrix2.diag(CausalPoly.constant(f.k0, ctx),
                                CausalPoly.constant(f.k1, ctx))
    if isinstance(f, Perm):
        return PolyMatrix2.swap(ctx) if f.kind == "J" else PolyMatrix2.identity(ctx)
    raise TypeError(f"not a cascade factor: {f!r}")


def expand_factors(factors, ctx) -> PolyMatrix2:
    out = PolyMatrix2.identity(ctx)
    for f in factors:
        out = out @ factor_matrix(f, ctx)
    return out


def gain_intertwine(V: Lift, k0, k1, counter=None) -> Lift:
    """Conjugate a lifting step through a gain matrix: D * V' = V * D, so the
    filter is rescaled by k_{1-chi} / k_chi."""
    ratio = (k1 / k0) if V.chi == 0 else (k0 / k1)
    return Lift(V.chi, scale_counted(V.filt, ratio, counter))


def swap_conjugate(f):
    """J-conjugate: f -> J f J."""
    if isinstance(f, Lift):
        return Lift(1 - f.chi, f.filt)
    if isinstance(f, Delay):
        return Delay(1 - f.chi, f.m)
    if isinstance(f, Gain):
        return Gain(f.k1, f.k0)
    if isinstance(f, Perm):
        return f
    raise TypeError(f"not a cascade factor: {f!r}")


# ---------------------------------------------------------------------------
# standard causal lifting form


@dataclass(frozen=True)
class Step:
    """One lifting step U_n together with the delay matrix paired to it.

    The delay sits immediately to the right of the lift in the expanded
    product and shares its update characteristic; step 0 never carries a
    delay (the rightmost lift is followed directly by P0).
    """
    chi: int
    filt: CausalPoly
    delay_m: int = 0


@dataclass(frozen=True)
class Cascade:
    gains: tuple
    row_delays: tuple
    col_delays: tuple
    steps: tuple  # Step, listed n = 0..N-1 (rightmost factor first)
    p0: str  # "I" or "J"
    ctx: object = field(compare=False)

    def __post_init__(self):
        if self.p0 not in ("I", "J"):
            raise ValueError("p0 must be 'I' or 'J'")
        k0, k1 = self.gains
        if self.ctx.is_zero(k0) or self.ctx.is_zero(k1):
            raise ValueError("gains must be nonzero")
        steps = self.steps
        if steps and steps[0].delay_m != 0:
            raise ValueError("step 0 cannot carry a delay")
        for a, b in zip(steps, steps[1:]):
            if b.chi != 1 - a.chi:
                raise ValueError("update characteristics must alternate")

    @property
    def n_steps(self):
        return len(self.steps)

    def chi0(self):
        return self.steps[0].chi if self.steps else None

    def factors(self):
        """Factor list in product order (left to right), delays included."""
        out = [Gain(*self.gains)]
        for s in reversed(self.steps):
            out.append(Lift(s.chi, s.filt))
            if s.delay_m:
                out.append(Delay(s.chi, s.delay_m))
        if self.p0 == "J":
            out.append(Perm("J"))
        return out

    def total_inner_delay(self):
        return sum(s.delay_m for s in self.steps)


def expand(c: Cascade) -> PolyMatrix2:
    ctx = c.ctx
    rho0, rho1 = c.row_delays
    c0, c1 = c.col_delays
    left = PolyMatrix2.diag(CausalPoly.monomial(c.gains[0], rho0, ctx),
                            CausalPoly.monomial(c.gains[1], rho1, ctx))
    mid = PolyMatrix2.identity(ctx)
    for s in reversed(c.steps):
        mid = mid @ factor_matrix(Lift(s.chi, s.filt), ctx)
        if s.delay_m:
            mid = mid @ factor_matrix(Delay(s.chi, s.delay_m), ctx)
    right = PolyMatrix2.diag(CausalPoly.monomial(ctx.one, c0, ctx),
                             CausalPoly.monomial(ctx.one, c1, ctx))
    out = left @ mid
    if c.p0 == "J":
        out = out @ PolyMatrix2.swap(ctx)
    return out @ right


def normalize(factors, ctx, row_delays=(0, 0), col_delays=(0, 0),
              counter=None) -> Cascade:
    """Reduce an arbitrary factor list to standard causal lifting form.

    Swaps migrate to the right end (J A = (J A J) J), gains to the left end
    (V D = D gamma^-1 V, one SP mult per rescaled general filter), then
    delays are paired with same-characteristic lifts and same-characteristic
    neighbours merge.  The expanded product is preserved exactly.
    """
    # Pass 1: move swaps right.  Factors to the right of an odd number of
    # swaps are J-conjugated.
    swapped = []
    parity = 0
    for f in factors:
        if isinstance(f, Perm):
            if f.kind == "J":
                parity ^= 1
            continue
        swapped.append(swap_conjugate(f) if parity else f)
    p0 = "J" if parity else "I"

    # Pass 2: move gains left, rescaling the lifts they cross.
    k0, k1 = ctx.one, ctx.one
    middle = []
    for f in reversed(swapped):
        if isinstance(f, Gain):
            if ctx.is_zero(f.k0) or ctx.is_zero(f.k1):
                raise NonPRInput("zero gain factor")
            k0, k1 = f.k0 * k0, f.k1 * k1
        elif isinstance(f, Lift):
            middle.append(gain_intertwine(f, k0, k1, counter)
                          if (k0 != ctx.one or k1 != ctx.one) else f)
        elif isinstance(f, Delay):
            middle.append(f)
        else:
            raise TypeError(f"not a cascade factor: {f!r}")
    middle.reverse()

    # Pass 3: pair delays with lifts, right to left.  carry[c] is the total
    # chi=c delay sitting immediately left of the suffix built so far.
    # Delays that cannot pair with any lift fold into the outer delay
    # diagonals: a trailing delay crosses P0 into the column delays, a
    # leading delay joins the row delays next to the gains.
    steps = []
    carry = [0, 0]
    col_extra = [0, 0]
    for f in reversed(middle):
        if isinstance(f, Delay):
            carry[f.chi] += f.m
            continue
        c = f.chi
        filt = f.filt
        if not steps and (carry[0] or carry[1]):
            flip = p0 == "J"
            col_extra[0] += carry[1] if flip else carry[0]
            col_extra[1] += carry[0] if flip else carry[1]
            carry = [0, 0]
        # The opposite-characteristic carry moves left through this lift.
        if carry[1 - c]:
            filt = filt.shift(carry[1 - c])
        m = carry[c]
        carry[c] = 0
        while steps and steps[-1].chi == c:
            # merge with the same-chi step to the right across this delay
            prev = steps.pop()
            filt = filt + prev.filt.shift(m)
            m += prev.delay_m
            if filt.is_zero():
                carry[c] += m
                filt = None
                break
        if filt is not None:
            steps.append(Step(c, filt, m))
    if not steps and (carry[0] or carry[1]):
        flip = p0 == "J"
        col_extra[0] += carry[1] if flip else carry[0]
        col_extra[1] += carry[0] if flip else carry[1]
        carry = [0, 0]
    if steps and steps[0].delay_m:
        # merging can leave the rightmost lift holding a delay; it sits
        # against P0 and belongs to the column diagonal
        s0 = steps[0]
        flip = p0 == "J"
        j = (1 - s0.chi) if flip else s0.chi
        col_extra[j] += s0.delay_m
        steps[0] = Step(s0.chi, s0.filt, 0)
    return Cascade(gains=(k0, k1),
                   row_delays=(row_delays[0] + carry[0],
                               row_delays[1] + carry[1]),
                   col_delays=(col_delays[0] + col_extra[0],
                               col_delays[1] + col_extra[1]),
                   steps=tuple(steps), p0=p0, ctx=ctx)


def normalize_cascade(c: Cascade) -> Cascade:
    """Re-normalize an existing cascade (idempotent)."""
    return normalize(c.factors(), c.ctx, c.row_delays, c.col_delays)


# ---------------------------------------------------------------------------
# JSON form


def cascade_to_json(c: Cascade) -> dict:
    return {
        "field": c.ctx.spec(),
        "gains": [c.ctx.format(c.gains[0]), c.ctx.format(c.gains[1])],
        "row_delays": list(c.row_delays),
        "col_delays": list(c.col_delays),
        "p0": c.p0,
        "steps": [
            {"chi": s.chi, "filter": s.filt.to_coeff_strings(),
             "delay_m": s.delay_m}
            for s in c.steps
        ],
    }


def cascade_from_json(data: dict, ctx=None) -> Cascade:
    from .field import context_from_spec

    if ctx is None:
        ctx = context_from_spec(data.get("field", "rational"))
    steps = tuple(
        Step(int(s["chi"]),
             CausalPoly.from_coeff_strings(s["filter"], ctx),
             int(s.get("delay_m", 0)))
        for s in data["steps"])
    return Cascade(
        gains=(ctx.parse(data["gains"][0]), ctx.parse(data["gains"][1])),
        row_delays=tuple(int(x) for x in data.get("row_delays", (0, 0))),
        col_delays=tuple(int(x) for x in data.get("col_delays", (0, 0))),
        steps=steps, p0=data.get("p0", "I"), ctx=ctx)


def cascade_to_text(c: Cascade) -> str:
    """Paper-style product rendering, one bracketed factor per line."""
    ctx = c.ctx
    lines = []
    rho0, rho1 = c.row_delays
    g0 = ctx.format(c.gains[0]) + (f"*z^-{rho0}" if rho0 else "")
    g1 = ctx.format(c.gains[1]) + (f"*z^-{rho1}" if rho1 else "")
    lines.append(f"diag({g0}, {g1})")
    for s in reversed(c.steps):
        u = s.filt.to_text()
        if s.chi == 0:
            lines.append(f"[1, {u}; 0, 1]")
        else:
            lines.append(f"[1, 0; {u}, 1]")
        if s.delay_m:
            d = f"z^-{s.delay_m}"
            lines.append(f"diag({d}, 1)" if s.chi == 0 else f"diag(1, {d})")
    if c.p0 == "J":
        lines.append("[0, 1; 1, 0]")
    c0, c1 = c.col_delays
    if c0 or c1:
        lines.append(f"diag(z^-{c0}, z^-{c1})")
    return "\n".join(lines)
