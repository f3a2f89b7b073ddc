"""Causal Euclidean-algorithm factorization of a polyphase matrix.

The remainder chain runs down one row or column; the matrix is rebuilt from
the division quotients plus a diagonal augmentation carrying the determinant,
and the final lifting step is recovered by exact division.  Operation counts
follow the worked complexity accounting: remainder-chain divisions, assembly
of the augmented matrix, the closing division, and the gain intertwinings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InexactDivision, NotCoprime, PreconditionViolated
from .pmat import Delay, Gain, Lift, Perm, PolyMatrix2, normalize, pr_check
from .poly import (
    CausalPoly,
    OpCounter,
    add_counted,
    classical_divide,
    mul_counted,
)


@dataclass(frozen=True)
class EEATrace:
    remainders: tuple
    quotients: tuple
    axis: str
    index: int
    augmentation: tuple  # (last remainder, det / last remainder)
    augmented: PolyMatrix2


def _remainder_chain(r0, r1, counter):
    remainders = [r0, r1]
    quotients = []
    while not remainders[-1].is_zero():
        q, r = classical_divide(remainders[-2], remainders[-1], counter)
        quotients.append(q)
        remainders.append(r)
    return remainders, quotients


def _continuant_product(qs, counter, ctx):
    """M_0 * ... * M_{n-1} with entries as expanded continuant sums.

    Products of quotients are shared through a memo and charged once; sums
    are charged per polynomial-polynomial addition, matching the itemized
    accounting for column chains.
    """
    n = len(qs)
    prods = {(): CausalPoly.one(ctx)}

    def product_of(t):
        if t not in prods:
            prods[t] = mul_counted(product_of(t[:-1]), qs[t[-1]], counter)
        return prods[t]

    def terms(a, b):
        # term index-tuples of the continuant K(q_a..q_b)
        if a > b:
            return [()]
        if a == b:
            return [(a,)]
        return [t + (b,) for t in terms(a, b - 1)] + terms(a, b - 2)

    def K(a, b):
        ts = terms(a, b)
        total = product_of(ts[0])
        for t in ts[1:]:
            total = add_counted(total, product_of(t), counter)
        return total

    return PolyMatrix2(((K(0, n - 1), K(0, n - 2)),
                        (K(1, n - 1), K(1, n - 2))))


def _iterative_product(qs, counter, ctx):
    """M_{n-1} * ... * M_0 by repeated right-multiplication."""
    one, zero = CausalPoly.one(ctx), CausalPoly.zero(ctx)
    n = len(qs)
    P = PolyMatrix2(((qs[n - 1], one), (one, zero)))
    for i in range(n - 2, -1, -1):
        q = qs[i]
        a, b = P[0, 0], P[0, 1]
        c, d = P[1, 0], P[1, 1]
        P = PolyMatrix2((
            (add_counted(mul_counted(a, q, counter), b, counter), a),
            (add_counted(mul_counted(c, q, counter), d, counter), c)))
    return P


def eea_factor(H: PolyMatrix2, axis: str, index: int, counter=None):
    """Lifting factorization by the Euclidean algorithm in one row or column.

    Returns (cascade, trace)."""
    ctx = H.ctx
    if counter is None:
        counter = OpCounter()
    a_hat, d_hat = pr_check(H)
    ell = index
    if axis == "col":
        r0, r1 = H[0, ell], H[1, ell]
    elif axis == "row":
        r0, r1 = H[ell, 0], H[ell, 1]
    else:
        raise ValueError(f"axis must be 'row' or 'col', got {axis!r}")
    if r0.is_zero():
        raise PreconditionViolated(f"{axis} {index} has a zero leading entry")

    remainders, quotients = _remainder_chain(r0, r1, counter)
    n = len(quotients)
    r_last = remainders[-2]
    if r_last.degree() != 0:
        raise NotCoprime(
            f"{axis} {index} gcd {r_last.to_text()} is not a unit; "
            "coprimify the matrix first")
    u = r_last.coeff(0)
    # Other diagonal entry of the augmentation: sign chosen so the rebuilt
    # matrix keeps the original determinant through the n chain factors of
    # determinant -1 plus the swap used when the shared line has index 1.
    c = a_hat / u if (n + ell) % 2 == 0 else -(a_hat / u)
    x_poly = CausalPoly.monomial(c, d_hat, ctx)

    if n >= 2:
        P = (_continuant_product(quotients, counter, ctx) if axis == "col"
             else _iterative_product(quotients, counter, ctx))
    else:
        P = PolyMatrix2.identity(ctx) if n == 0 else PolyMatrix2(
            ((quotients[0], CausalPoly.one(ctx)),
             (CausalPoly.one(ctx), CausalPoly.zero(ctx))))

    swap = PolyMatrix2.swap(ctx)
    if axis == "col":
        base = P if ell == 0 else P @ swap
        scales = (r_last, x_poly) if ell == 0 else (x_poly, r_last)
        rows = tuple(
            tuple(mul_counted(base[i, j], scales[j], counter) for j in range(2))
            for i in range(2))
    else:
        base = P if ell == 0 else swap @ P
        scales = (r_last, x_poly) if ell == 0 else (x_poly, r_last)
        rows = tuple(
            tuple(mul_counted(base[i, j], scales[i], counter) for j in range(2))
            for i in range(2))
    Hp = PolyMatrix2(rows)

    lift = lifting_theorem_solve(H, Hp, axis, ell, counter)

    factors = []
    if axis == "col":
        for q in quotients:
            factors.append(Lift(0, q))
            factors.append(Perm("J"))
        if ell == 0:
            factors += [Gain(u, c), Delay(1, d_hat)]
        else:
            factors += [Perm("J"), Gain(c, u), Delay(0, d_hat)]
        if lift is not None:
            factors.append(Lift(0 if ell == 0 else 1, lift.filt))
    else:
        if lift is not None:
            factors.append(Lift(1 if ell == 0 else 0, lift.filt))
        if ell == 0:
            factors += [Gain(u, c), Delay(1, d_hat)]
        else:
            factors += [Gain(c, u), Delay(0, d_hat), Perm("J")]
        for q in reversed(quotients):
            factors.append(Perm("J"))
            factors.append(Lift(1, q))

    cascade = normalize(factors, ctx, counter=counter)
    trace = EEATrace(tuple(remainders), tuple(quotients), axis, index,
                     (r_last, x_poly), Hp)
    return cascade, trace


def lifting_theorem_solve(H: PolyMatrix2, Hp: PolyMatrix2, shared: str,
                          index: int, counter=None):
    """Recover the single lifting step relating two matrices that agree in
    one row or column and share a determinant.

    Returns a Lift, or None when the matrices are equal (identity step).
    The division must be exact; a nonzero remainder means the agreement
    precondition fails.
    """
    ctx = H.ctx
    ell = index
    ellp = 1 - ell
    if shared == "col":
        if H.col(ell) != Hp.col(ell):
            raise InexactDivision(f"matrices disagree in column {ell}")
        i = 0 if not H[0, ell].is_zero() else 1
        num = add_counted(H[i, ellp], Hp[i, ellp], counter, subtract=True)
        S, rem = classical_divide(num, H[i, ell], counter)
        chi = 0 if ell == 0 else 1
        check = _apply_col_lift(Hp, S, ell)
    elif shared == "row":
        if H.row(ell) != Hp.row(ell):
            raise InexactDivision(f"matrices disagree in row {ell}")
        j = 0 if not H[ell, 0].is_zero() else 1
        num = add_counted(H[ellp, j], Hp[ellp, j], counter, subtract=True)
        S, rem = classical_divide(num, H[ell, j], counter)
        chi = 1 if ell == 0 else 0
        check = _apply_row_lift(Hp, S, ell)
    else:
        raise ValueError(f"shared must be 'row' or 'col', got {shared!r}")
    if not rem.is_zero() or check != H:
        raise InexactDivision(
            "lifting solve is inexact; matrices do not differ by one step")
    if S.is_zero():
        return None
    return Lift(chi, S)


def _apply_col_lift(Hp, S, ell):
    ellp = 1 - ell
    cols = [None, None]
    cols[ell] = Hp.col(ell)
    cols[ellp] = tuple(Hp[i, ellp] + Hp[i, ell] * S for i in range(2))
    return PolyMatrix2(tuple((cols[0][i], cols[1][i]) for i in range(2)))


def _apply_row_lift(Hp, S, ell):
    ellp = 1 - ell
    rows = [None, None]
    rows[ell] = Hp.row(ell)
    rows[ellp] = tuple(Hp[ellp, j] + Hp[ell, j] * S for j in range(2))
    return PolyMatrix2(rows)


# ---------------------------------------------------------------------------
# complexity comparison


def complexity_report(H: PolyMatrix2, targets):
    """Per-target operation counts.

    Targets are ('EEA', axis, index) or ('CCA', label, schema)."""
    from .cca import run_schema

    rows = []
    for target in targets:
        counter = OpCounter()
        if target[0] == "EEA":
            _, axis, index = target
            eea_factor(H, axis, index, counter)
            label = f"{axis} {index} EEA"
        elif target[0] == "CCA":
            _, label, schema = target
            run_schema(H, schema, counter)
        else:
            raise ValueError(f"unknown method {target[0]!r}")
        rows.append((label, counter))
    return rows


def report_text(rows):
    header = f"{'Factorization':<16}{'PP adds':>8}{'SP mults':>10}{'PP mults':>10}{'P divs':>8}"
    lines = [header, "-" * len(header)]
    for label, counter in rows:
        a, s, m, d = counter.as_tuple()
        lines.append(f"{label:<16}{a:>8}{s:>10}{m:>10}{d:>8}")
    return "\n".join(lines)


def report_csv(rows):
    lines = ["factorization,pp_adds,sp_mults,pp_mults,p_divs"]
    for label, counter in rows:
        a, s, m, d = counter.as_tuple()
        lines.append(f"{label},{a},{s},{m},{d}")
    return "\n".join(lines)
