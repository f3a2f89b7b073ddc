"""Left degree-lifting cascades: right partial products, degree signatures,
lifting signatures, and exhaustive enumeration of all left factorizations
reachable through row reductions alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MixedSources, NotCoprime, PreconditionViolated
from .cca import check_coprime, extract_step, has_zero, terminate
from .pmat import (
    Cascade,
    Delay,
    Lift,
    PolyMatrix2,
    expand,
    factor_matrix,
    normalize,
    pr_check,
)
from .poly import monomial_gcd


def partial_products(c: Cascade):
    """P_0 .. P_N with P_0 the permutation and P_n = U_{n-1} L_{n-1} P_{n-1}."""
    ctx = c.ctx
    out = [PolyMatrix2.swap(ctx) if c.p0 == "J" else PolyMatrix2.identity(ctx)]
    for s in c.steps:
        m = factor_matrix(Lift(s.chi, s.filt), ctx)
        if s.delay_m:
            m = m @ factor_matrix(Delay(s.chi, s.delay_m), ctx)
        out.append(m @ out[-1])
    return out


def degree_signature(P: PolyMatrix2, chi_prev: int):
    """Columns in which the last-updated row strictly dominates in degree.

    Requires coprime rows; a non-coprime product returns the empty set."""
    for i in range(2):
        if all(p.is_zero() for p in P.row(i)) or monomial_gcd(P.row(i)) != 0:
            return frozenset()
    out = set()
    for j in range(2):
        if P[chi_prev, j].degree() > P[1 - chi_prev, j].degree():
            out.add(j)
    return frozenset(out)


@dataclass(frozen=True)
class LiftingSignature:
    coprimification: tuple
    entries: tuple  # sig(P_{N-1}); then (deg|Lambda_n|, sig(P_n)) down to P_1; sig(P_0)
    chi0: object

    def to_text(self):
        rho0, rho1, c0, c1 = self.coprimification
        parts = []
        if any(self.coprimification):
            parts.append(f"{rho0},{rho1},{c0},{c1}:")
        body = []
        for e in self.entries:
            if isinstance(e, tuple):
                body.append(f"{e[0]},{_set_text(e[1])}")
            else:
                body.append(_set_text(e))
        text = "; ".join(body)
        if self.chi0 is not None:
            text = f"{text} : {self.chi0}" if text else f": {self.chi0}"
        if parts:
            text = f"{parts[0]} {text}"
        return f"[{text}]" if text else "[ ]"


def _set_text(s):
    if len(s) == 2:
        return "{0,1}"
    if len(s) == 1:
        return str(next(iter(s)))
    return "{}"


def lifting_signature(c: Cascade) -> LiftingSignature:
    n = c.n_steps
    prods = partial_products(c)
    sigs = []
    for k in range(n + 1):
        chi_prev = c.steps[k - 1].chi if k >= 1 else (
            1 - c.steps[0].chi if n else None)
        sigs.append(degree_signature(prods[k], chi_prev)
                    if chi_prev is not None else frozenset())
    entries = []
    if n >= 1:
        entries.append(sigs[n - 1])
        for k in range(n - 2, 0, -1):
            entries.append((c.steps[k].delay_m, sigs[k]))
        if n >= 2:
            entries.append(sigs[0])
    coprim = (*c.row_delays, *c.col_delays)
    return LiftingSignature(coprim, tuple(entries), c.chi0())


def is_left_degree_lifting(c: Cascade) -> bool:
    """True iff sig(P_n) is nonempty for 0 <= n <= N-1."""
    n = c.n_steps
    if n == 0:
        return True
    prods = partial_products(c)
    for k in range(n):
        chi_prev = c.steps[k - 1].chi if k >= 1 else 1 - c.steps[0].chi
        if not degree_signature(prods[k], chi_prev):
            return False
    return True


# ---------------------------------------------------------------------------
# exhaustive left enumeration


def enumerate_left(Q0: PolyMatrix2, max_depth=None):
    """All distinct cascades reachable by left-only downlifting choices.

    The dividend row alternates after the first step (irreducibility), the
    multiplicity ranges over [0, remaining determinantal degree], and both
    divisor columns are tried; choices yielding the identical step merge.
    """
    ctx = Q0.ctx
    _, d_hat = pr_check(Q0)
    if not has_zero(Q0):
        check_coprime(Q0)
    if max_depth is None:
        total_deg = sum(len(Q0[i, j].coeffs) for i in range(2) for j in range(2))
        max_depth = total_deg + d_hat + 4
    results = []
    seen = set()

    def finish(prefix, Q):
        cascade = normalize(prefix + terminate(Q), ctx)
        if cascade not in seen:
            seen.add(cascade)
            results.append(cascade)

    def rec(Q, forced_delta, prefix, path, depth):
        if has_zero(Q):
            finish(prefix, Q)
            return
        if depth > max_depth:
            raise RuntimeError("left enumeration exceeded its depth bound")
        _, d = pr_check(Q)
        children = {}
        deltas = (forced_delta,) if forced_delta is not None else (0, 1)
        for delta in deltas:
            for m in range(d + 1):
                for ell in (0, 1):
                    try:
                        step = extract_step(Q, "L", m, delta, ell)
                    except PreconditionViolated:
                        continue
                    except NotCoprime:
                        raise
                    key = (delta, step.lift, step.delay, step.quotient)
                    children.setdefault(key, step)
        for (delta, _, _, _), step in children.items():
            state = (step.quotient, 1 - delta)
            if state in path:
                continue
            tail = [step.lift]
            if step.delay.m:
                tail.append(step.delay)
            rec(step.quotient, 1 - delta, prefix + tail,
                path | {state}, depth + 1)

    rec(Q0, None, [], frozenset(), 0)
    return results


def uniqueness_check(cascades) -> bool:
    """True iff the lifting signatures of the cascades are pairwise distinct
    (duplicated cascades are tolerated).  All inputs must expand to one
    matrix."""
    cascades = list(cascades)
    if not cascades:
        return True
    target = expand(cascades[0])
    by_sig = {}
    for c in cascades:
        if expand(c) != target:
            raise MixedSources("cascades expand to different matrices")
        sig = lifting_signature(c).to_text()
        if sig in by_sig and by_sig[sig] != c:
            return False
        by_sig[sig] = c
    return True
