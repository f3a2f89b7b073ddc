"""The Causal Complementation Algorithm: degree-reducing causal complements,
lifting-step extraction in all four handedness/triangularity combinations,
termination, and schema parsing/execution.

A factorization run is driven by a schema: per step the handedness (L = row
reduction, R = column reduction), the minimum remainder multiplicity M, the
dividend index delta, and the divisor index ell.  Braces group choices that
provably yield the identical step; they are validated eagerly at execution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BraceMismatch,
    DivisorNotLeftJustified,
    MultipleZeros,
    NotCoprime,
    NoZero,
    ParseError,
    PreconditionViolated,
    QuotientHasZero,
    SchemaError,
)
from .pmat import (
    Cascade,
    Delay,
    Gain,
    Lift,
    Perm,
    PolyMatrix2,
    coprimify,
    normalize,
    pr_check,
)
from .poly import (
    CausalPoly,
    OpCounter,
    add_counted,
    monomial_gcd,
    mul_counted,
    sgda_divide,
)


@dataclass(frozen=True)
class StepChoice:
    """One lifting-step schema entry (eta, M, delta, ell).

    M, delta and ell may be frozensets of equivalent values (brace-sets)."""

    eta: str
    M: object
    delta: object
    ell: object

    def members(self):
        """All concrete (eta, M, delta, ell) combinations in the braces."""
        ms = sorted(self.M) if isinstance(self.M, frozenset) else [self.M]
        ds = sorted(self.delta) if isinstance(self.delta, frozenset) else [self.delta]
        ls = sorted(self.ell) if isinstance(self.ell, frozenset) else [self.ell]
        return [(self.eta, m, d, l) for m in ms for d in ds for l in ls]


@dataclass(frozen=True)
class Schema:
    steps: tuple
    coprimification: tuple | None = None


def _fmt_field(v):
    if isinstance(v, frozenset):
        return "{" + ",".join(str(x) for x in sorted(v)) + "}"
    return str(v)


def format_schema(s: Schema) -> str:
    body = "; ".join(
        f"{c.eta},{_fmt_field(c.M)},{_fmt_field(c.delta)},{_fmt_field(c.ell)}"
        for c in s.steps)
    if s.coprimification is not None:
        prefix = ",".join(str(x) for x in s.coprimification) + ": "
        return f"({prefix}{body})"
    return f"({body})"


def parse_schema(text: str) -> Schema:
    s = "".join(text.split())
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("schema must be parenthesized")
    body = s[1:-1]
    coprim = None
    if ":" in body:
        head, body = body.split(":", 1)
        parts = head.split(",")
        if len(parts) != 4:
            raise ParseError("coprimification needs four delays")
        try:
            coprim = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise ParseError(f"bad coprimification: {exc}")
    steps = []
    if body:
        for idx, chunk in enumerate(body.split(";")):
            steps.append(_parse_step(chunk, idx))
    return Schema(steps=tuple(steps), coprimification=coprim)


def _parse_step(chunk, idx):
    fields = _split_step_fields(chunk)
    if len(fields) != 4:
        raise SchemaError(f"expected 4 fields, got {len(fields)}", idx)
    eta = fields[0]
    if eta not in ("L", "R"):
        raise SchemaError(f"handedness must be L or R, got {eta!r}", idx)
    m = _parse_field(fields[1], idx)
    delta = _parse_field(fields[2], idx, bit=True)
    ell = _parse_field(fields[3], idx, bit=True)
    return StepChoice(eta, m, delta, ell)


def _split_step_fields(chunk):
    fields = []
    cur = []
    depth = 0
    for ch in chunk:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            fields.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    fields.append("".join(cur))
    return fields


def _parse_field(text, idx, bit=False):
    if text.startswith("{") and text.endswith("}"):
        vals = frozenset(int(v) for v in text[1:-1].split(","))
    else:
        try:
            vals = int(text)
        except ValueError:
            raise SchemaError(f"bad schema field {text!r}", idx)
    check = vals if isinstance(vals, frozenset) else {vals}
    for v in check:
        if v < 0 or (bit and v not in (0, 1)):
            raise SchemaError(f"field value {v} out of range", idx)
    return vals


# ---------------------------------------------------------------------------
# the causal complementation theorem


def causal_complement(E0, E1, F0, F1, ell, M, counter=None):
    """Unique causal complement to (F0, F1) degree-reducing modulo M in F_ell.

    (E0, E1) must already be a causal complement (monomial Diophantine
    determinant); the quotient S and remainders (R0, R1) = (E0, E1) - S*(F0~,
    F1~) are returned, where Fj~ strips the monomial gcd of the F pair.
    """
    det = F0 * E1 - F1 * E0
    if det.is_zero() or not det.is_monomial():
        raise PreconditionViolated(
            f"F0*E1 - F1*E0 = {det.to_text()} is not a nonzero monomial")
    d_hat = det.degree()
    d_f = monomial_gcd([F0, F1])
    if not 0 <= M <= d_hat - d_f:
        raise PreconditionViolated(
            f"multiplicity {M} outside [0, {d_hat - d_f}]")
    ft = (F0.shift(-d_f), F1.shift(-d_f))
    es = (E0, E1)
    if M > 0 and not ft[ell].is_left_justified():
        raise DivisorNotLeftJustified(
            f"coprime part of F_{ell} is not left justified")
    if ft[ell].is_zero():
        raise PreconditionViolated(f"divisor F_{ell} is zero")
    S, r_ell = sgda_divide(es[ell], ft[ell], M, counter)
    other = 1 - ell
    r_other = add_counted(es[other], mul_counted(ft[other], S, counter),
                          counter, subtract=True)
    R = [None, None]
    R[ell], R[other] = r_ell, r_other
    for r in R:
        assert r.is_zero() or r.multiplicity() >= M
    return S, R[0], R[1]


# ---------------------------------------------------------------------------
# lifting-step extraction


def has_zero(Q: PolyMatrix2):
    return any(Q[i, j].is_zero() for i in range(2) for j in range(2))


def check_coprime(Q: PolyMatrix2):
    for i in range(2):
        if monomial_gcd(Q.row(i)) != 0:
            raise NotCoprime(f"row {i} of quotient not coprime")
    for j in range(2):
        if monomial_gcd(Q.col(j)) != 0:
            raise NotCoprime(f"column {j} of quotient not coprime")


@dataclass(frozen=True)
class ExtractedStep:
    lift: Lift
    delay: Delay
    quotient: PolyMatrix2


def extract_step(Q: PolyMatrix2, eta, M, delta, ell,
                 counter=None) -> ExtractedStep:
    """One downlift: Q = V Delta Q' (eta = L) or Q = Q' Delta V (eta = R)."""
    if has_zero(Q):
        raise QuotientHasZero("quotient already has a zero; terminate instead")
    check_coprime(Q)
    _, d_hat = pr_check(Q)
    if not 0 <= M <= d_hat:
        raise PreconditionViolated(f"multiplicity {M} outside [0, {d_hat}]")
    if eta == "L":
        E, F = Q.row(delta), Q.row(1 - delta)
        chi_v = delta
    elif eta == "R":
        E, F = Q.col(delta), Q.col(1 - delta)
        chi_v = 1 - delta
    else:
        raise ValueError(f"handedness must be 'L' or 'R', got {eta!r}")
    if M > 0 and not F[ell].is_left_justified():
        raise DivisorNotLeftJustified(
            f"divisor index {ell} not left justified for M={M}")
    S, r_ell = sgda_divide(E[ell], F[ell], M, counter)
    if S.is_zero():
        raise PreconditionViolated(
            "choice yields an identity lifting step (zero quotient)")
    other = 1 - ell
    r_other = add_counted(E[other], mul_counted(F[other], S, counter),
                          counter, subtract=True)
    R = [None, None]
    R[ell], R[other] = r_ell, r_other
    m = monomial_gcd(R)
    rt = tuple(r.shift(-m) for r in R)
    # degree-reducing guarantee in the divisor coordinate
    assert rt[ell].degree() < F[ell].degree()
    if eta == "L":
        rows = [None, None]
        rows[delta], rows[1 - delta] = rt, F
        Qp = PolyMatrix2(rows)
    else:
        cols = [None, None]
        cols[delta], cols[1 - delta] = rt, F
        Qp = PolyMatrix2(tuple((cols[0][i], cols[1][i]) for i in range(2)))
    return ExtractedStep(Lift(chi_v, S), Delay(delta, m), Qp)


def terminate(Q: PolyMatrix2, counter=None):
    """Factor a single-zero (or constant diagonal/antidiagonal) quotient into
    [Gain, optional Lift, optional Perm(J)].

    Row and column reduction provably coincide here, so there are no user
    options.
    """
    ctx = Q.ctx
    zeros = [(i, j) for i in range(2) for j in range(2) if Q[i, j].is_zero()]
    if not zeros:
        raise NoZero("terminate needs a quotient with a zero entry")
    if len(zeros) > 2:
        raise MultipleZeros("quotient is the zero matrix")

    def unit_value(p, what):
        if p.degree() != 0:
            raise NotCoprime(f"{what} entry {p.to_text()} is not a unit")
        return p.coeff(0)

    if len(zeros) == 2:
        if zeros == [(0, 0), (1, 1)]:
            k0 = unit_value(Q[0, 1], "antidiagonal")
            k1 = unit_value(Q[1, 0], "antidiagonal")
            return [Gain(k0, k1), Perm("J")]
        if zeros == [(0, 1), (1, 0)]:
            k0 = unit_value(Q[0, 0], "diagonal")
            k1 = unit_value(Q[1, 1], "diagonal")
            return [Gain(k0, k1)]
        raise MultipleZeros("zeros share a row or column")

    (zi, zj) = zeros[0]
    fi, fj = 1 - zi, 1 - zj
    F = Q[fi, fj]  # diagonally opposite the zero
    if zi == zj:
        # antidiagonal units
        k0 = unit_value(Q[0, 1], "unit")
        k1 = unit_value(Q[1, 0], "unit")
        chi = 1 if zi == 0 else 0
        filt = _unit_divide(F, k1 if chi == 1 else k0, counter, ctx)
        return [Gain(k0, k1), Lift(chi, filt), Perm("J")]
    # diagonal units
    k0 = unit_value(Q[0, 0], "unit")
    k1 = unit_value(Q[1, 1], "unit")
    chi = 0 if zi == 1 else 1
    filt = _unit_divide(F, k0 if chi == 0 else k1, counter, ctx)
    return [Gain(k0, k1), Lift(chi, filt)]


def _unit_divide(F, kappa, counter, ctx):
    if counter is not None and not F.is_scalarlike():
        counter.sp_mult += 1
    return F.scale(ctx.one / kappa)


def terminate_other_route(Q: PolyMatrix2):
    """The alternative (column vs row) reduction of the terminal quotient;
    exists to check the no-options claim by explicit matrix algebra."""
    ctx = Q.ctx
    factors = terminate(Q)
    lifts = [f for f in factors if isinstance(f, Lift)]
    if not lifts:
        return factors
    gain = factors[0]
    swap = any(isinstance(f, Perm) for f in factors)
    lift = lifts[0]
    # Reduction on the other side: D * L(U) = L'(U * k_chi / k_chi') * D.
    ratio = (gain.k0 / gain.k1) if lift.chi == 0 else (gain.k1 / gain.k0)
    other = Lift(lift.chi, lift.filt.scale(ratio))
    out = [other, gain]
    if swap:
        out.append(Perm("J"))
    return out


# ---------------------------------------------------------------------------
# schema execution


def run_schema(H: PolyMatrix2, schema, counter=None, order="rows_first") -> Cascade:
    """Execute a factorization schema and return the standard-form cascade."""
    if isinstance(schema, str):
        schema = parse_schema(schema)
    ctx = H.ctx
    pr_check(H)
    explicit = schema.coprimification
    rho0, rho1, c0, c1, Q = coprimify(H, order=order, explicit=explicit)
    left = []
    right = []
    for idx, choice in enumerate(schema.steps):
        try:
            step = apply_choice(Q, choice, counter)
        except BraceMismatch as exc:
            raise BraceMismatch(exc.args[0], idx) from exc
        except (PreconditionViolated, DivisorNotLeftJustified, QuotientHasZero,
                NotCoprime) as exc:
            raise SchemaError(str(exc), idx) from exc
        eta = choice.eta
        if eta == "L":
            left.append(step.lift)
            if step.delay.m:
                left.append(step.delay)
        else:
            tail = [step.lift]
            if step.delay.m:
                tail.insert(0, step.delay)
            right = tail + right
        Q = step.quotient
    if not has_zero(Q):
        raise SchemaError(
            "schema ended before the quotient reached terminal form",
            len(schema.steps))
    factors = left + terminate(Q, counter) + right
    return normalize(factors, ctx, row_delays=(rho0, rho1),
                     col_delays=(c0, c1), counter=counter)


def apply_choice(Q, choice: StepChoice, counter=None) -> ExtractedStep:
    """Execute a StepChoice; all brace members must give the identical step.

    Only the first member's operations are charged to the counter."""
    members = choice.members()
    first = None
    for i, (eta, m, d, l) in enumerate(members):
        step = extract_step(Q, eta, m, d, l, counter if i == 0 else None)
        if first is None:
            first = step
        elif step != first:
            raise BraceMismatch(
                f"brace member ({eta},{m},{d},{l}) disagrees with "
                f"({members[0][0]},{members[0][1]},{members[0][2]},{members[0][3]})")
    return first


def coalesce_options(Q: PolyMatrix2, choice: StepChoice,
                     counter=None) -> StepChoice:
    """Expand a concrete choice with braces over every M and ell (and delta)
    that yields the identical lifting step."""
    base = apply_choice(Q, choice, counter)
    eta, M0, d0, l0 = choice.members()[0]
    _, d_hat = pr_check(Q)
    ms, ds, ls = set(), set(), set()
    for m in range(d_hat + 1):
        for d in (0, 1):
            for l in (0, 1):
                try:
                    step = extract_step(Q, eta, m, d, l)
                except (PreconditionViolated, DivisorNotLeftJustified,
                        NotCoprime):
                    continue
                if step == base:
                    if d == d0 and l == l0:
                        ms.add(m)
                    if m == M0 and l == l0:
                        ds.add(d)
                    if m == M0 and d == d0:
                        ls.add(l)
    def pack(vals):
        return frozenset(vals) if len(vals) > 1 else next(iter(vals))
    return StepChoice(eta, pack(ms), pack(ds), pack(ls))


def divisor_agreement_certificate(Q: PolyMatrix2, eta, M, delta):
    """Degree inequality certifying that both divisor choices coincide:
    d_hat < deg(F_0) + deg(F_1) - deg gcd(F_0, F_1) + M."""
    _, d_hat = pr_check(Q)
    F = Q.row(1 - delta) if eta == "L" else Q.col(1 - delta)
    if any(p.is_zero() for p in F):
        return False
    d_f = monomial_gcd(F)
    return d_hat < F[0].degree() + F[1].degree() - d_f + M
