"""Causal polynomials F(z) = sum_{n>=0} f(n) z^-n over a scalar field.

Coefficients are indexed by the power of z^-1 (index 0 = constant term) and
the representation is trimmed so the highest stored coefficient is nonzero.
Includes classical long division, the slightly generalized division that
produces remainders divisible by z^-M, monomial gcds, and the polynomial
operation counters used for complexity accounting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AllZero,
    DivisorNotLeftJustified,
    MixedRealizations,
    ParseError,
    ZeroDivisor,
    ZeroPolynomial,
)
from .field import FieldContext, Quadratic


class _Bottom:
    """Degree of the zero polynomial; compares less than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return self is not other

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return self is other

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash("degree-bottom")

    def __repr__(self):
        return "Bottom"


BOTTOM = _Bottom()


class CausalPoly:
    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs, ctx: FieldContext):
        coeffs = list(coeffs)
        while coeffs and ctx.is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.ctx = ctx

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls((), ctx)

    @classmethod
    def one(cls, ctx):
        return cls((ctx.one,), ctx)

    @classmethod
    def constant(cls, value, ctx):
        return cls((value,), ctx)

    @classmethod
    def monomial(cls, value, power, ctx):
        return cls((ctx.zero,) * power + (value,), ctx)

    @classmethod
    def from_ints(cls, ints, ctx):
        return cls([ctx.from_fraction(Fraction(c)) for c in ints], ctx)

    # -- basic structure ---------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else BOTTOM

    def coeff(self, n):
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return self.ctx.zero

    def multiplicity(self):
        """Largest M with z^-M dividing the polynomial (count of leading zeros)."""
        if self.is_zero():
            raise ZeroPolynomial("multiplicity of the zero polynomial")
        m = 0
        while self.ctx.is_zero(self.coeffs[m]):
            m += 1
        return m

    def is_left_justified(self):
        return not self.is_zero() and not self.ctx.is_zero(self.coeffs[0])

    def is_unit(self):
        return len(self.coeffs) == 1

    def is_monomial(self):
        """Single-term c*z^-k, c != 0 (units included, zero excluded)."""
        if self.is_zero():
            return False
        return all(self.ctx.is_zero(c) for c in self.coeffs[:-1])

    def is_scalarlike(self):
        """Treated as a scalar for cost accounting: zero, unit, or monomial."""
        return self.is_zero() or self.is_monomial()

    def shift(self, k):
        """Multiply by z^-k.  Negative k (an advance) requires divisibility."""
        if self.is_zero() or k == 0:
            return self
        if k > 0:
            return CausalPoly((self.ctx.zero,) * k + self.coeffs, self.ctx)
        if self.multiplicity() < -k:
            raise ValueError(f"z^{k} shift would leave causal support")
        return CausalPoly(self.coeffs[-k:], self.ctx)

    def scale(self, scalar):
        return CausalPoly([c * scalar for c in self.coeffs], self.ctx)

    def eval_complex(self, z):
        """Evaluate at a point of the unit circle (float embedding)."""
        acc = 0j
        zinv = 1 / z
        p = 1 + 0j
        for c in self.coeffs:
            acc += self.ctx.to_float(c) * p
            p *= zinv
        return acc

    def coeff_abs_sum(self):
        return sum(abs(self.ctx.to_float(c)) for c in self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, CausalPoly):
            raise TypeError(f"expected CausalPoly, got {other!r}")
        if other.ctx != self.ctx:
            raise MixedRealizations("polynomials over different field contexts")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return CausalPoly([self.coeff(i) + other.coeff(i) for i in range(n)],
                          self.ctx)

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return CausalPoly([self.coeff(i) - other.coeff(i) for i in range(n)],
                          self.ctx)

    def __neg__(self):
        return CausalPoly([-c for c in self.coeffs], self.ctx)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return CausalPoly.zero(self.ctx)
        out = [self.ctx.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if self.ctx.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return CausalPoly(out, self.ctx)

    def __eq__(self, other):
        if not isinstance(other, CausalPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.ctx))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CausalPoly({self.to_text()!r})"

    # -- text / JSON forms ---------------------------------------------------

    def to_text(self):
        if self.is_zero():
            return "0"
        parts = []
        for n, c in enumerate(self.coeffs):
            if self.ctx.is_zero(c):
                continue
            s = self.ctx.format(c)
            if any(op in s[1:] for op in "+-"):
                s = f"({s})"
            if n == 0:
                parts.append(s)
            elif s == "1":
                parts.append(f"z^-{n}")
            elif s == "-1":
                parts.append(f"-z^-{n}")
            else:
                parts.append(f"{s}*z^-{n}")
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += f" - {p[1:]}"
            else:
                out += f" + {p}"
        return out

    def to_coeff_strings(self):
        return [self.ctx.format(c) for c in self.coeffs]

    @classmethod
    def from_coeff_strings(cls, strings, ctx):
        return cls([ctx.parse(s) for s in strings], ctx)


_TERM_SPLIT = re.compile(r"(?<![eE(])([+-])")


def parse_poly(text, ctx) -> CausalPoly:
    """Parse the 'c0 + c1*z^-1 + ...' text form."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    if s == "0":
        return CausalPoly.zero(ctx)
    coeffs: dict[int, object] = {}
    for sign, term in _split_terms(s):
        power, coef_text = _split_monomial(term)
        if coef_text == "":
            coef = ctx.one
        else:
            coef = ctx.parse(coef_text)
        if sign == "-":
            coef = -coef
        coeffs[power] = coeffs.get(power, ctx.zero) + coef
    size = max(coeffs) + 1
    return CausalPoly([coeffs.get(i, ctx.zero) for i in range(size)], ctx)


def _split_terms(s):
    """Split on top-level +/- (not inside parentheses, not exponent signs)."""
    terms = []
    depth = 0
    sign = "+"
    cur = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and not _is_exponent_sign(s, i):
            terms.append((sign, "".join(cur).strip()))
            sign = ch
            cur = []
        else:
            cur.append(ch)
        i += 1
    if not cur or not "".join(cur).strip():
        raise ParseError(f"dangling sign in {s!r}")
    terms.append((sign, "".join(cur).strip()))
    return terms


def _is_exponent_sign(s, i):
    # z^-1 exponents and 1e-3 floats keep their signs
    prev = s[i - 1] if i > 0 else ""
    return prev in ("^", "e", "E")


_MONO_RE = re.compile(r"^(?P<coef>.*?)\s*\*?\s*z\s*\^\s*-\s*(?P<pow>\d+)\s*$")


def _split_monomial(term):
    m = _MONO_RE.match(term)
    if m is None:
        return 0, term
    coef = m.group("coef").strip()
    if coef.endswith("*"):
        coef = coef[:-1].strip()
    if coef.startswith("(") and coef.endswith(")"):
        coef = coef[1:-1]
    return int(m.group("pow")), coef


# ---------------------------------------------------------------------------
# operation counting


@dataclass
class OpCounter:
    """Polynomial-operation tallies: poly-poly adds, scalar-poly mults,
    poly-poly mults, and full polynomial divisions.

    Monomials count as scalars; scalar-polynomial adds and scalar-scalar
    divides are free.
    """

    pp_add: int = 0
    sp_mult: int = 0
    pp_mult: int = 0
    p_div: int = 0

    def as_tuple(self):
        return (self.pp_add, self.sp_mult, self.pp_mult, self.p_div)

    def merge(self, other):
        self.pp_add += other.pp_add
        self.sp_mult += other.sp_mult
        self.pp_mult += other.pp_mult
        self.p_div += other.p_div


def counted_arith(a: CausalPoly, b: CausalPoly, kind, counter) -> CausalPoly:
    """Spec-surface arithmetic with an explicit cost kind.

    The kind must be consistent with the operand shapes (sp_mult needs one
    scalar-like operand, pp_mult/pp_add need two general ones).
    """
    if kind == "pp_add":
        if a.is_scalarlike() and b.is_scalarlike():
            raise ValueError("pp_add on two scalar-like operands")
        if counter is not None:
            counter.pp_add += 1
        return a + b
    if kind == "pp_mult":
        if a.is_scalarlike() or b.is_scalarlike():
            raise ValueError("pp_mult with a scalar-like operand")
        if counter is not None:
            counter.pp_mult += 1
        return a * b
    if kind == "sp_mult":
        if not (a.is_scalarlike() or b.is_scalarlike()):
            raise ValueError("sp_mult needs a unit or monomial operand")
        if counter is not None:
            counter.sp_mult += 1
        return a * b
    raise ValueError(f"unknown kind {kind!r}")


def _is_trivial_factor(p: CausalPoly):
    return p.is_unit() and p.coeffs[0] == p.ctx.one


def mul_counted(a, b, counter):
    """Multiply and charge by operand class (monomials count as scalars;
    scalar*scalar and multiplication by literal one are free)."""
    if counter is not None and not (_is_trivial_factor(a) or _is_trivial_factor(b)):
        a_s, b_s = a.is_scalarlike(), b.is_scalarlike()
        if a_s and b_s:
            pass
        elif a_s or b_s:
            counter.sp_mult += 1
        else:
            counter.pp_mult += 1
    return a * b


def add_counted(a, b, counter, subtract=False):
    """Add/subtract; only polynomial-polynomial additions are charged."""
    if counter is not None and not a.is_scalarlike() and not b.is_scalarlike():
        counter.pp_add += 1
    return a - b if subtract else a + b


def scale_counted(p, scalar, counter):
    """Scalar rescale of a polynomial (one SP mult unless trivial)."""
    ctx = p.ctx
    if counter is not None and scalar != ctx.one and not p.is_scalarlike():
        counter.sp_mult += 1
    return p.scale(scalar)


# ---------------------------------------------------------------------------
# division


def classical_divide(E: CausalPoly, F: CausalPoly, counter=None):
    """Long division E = F*S + R with deg(R) < deg(F).

    Division by a unit or monomial is charged as one SP mult, otherwise as
    one polynomial division.
    """
    if F.is_zero():
        raise ZeroDivisor("classical division by the zero polynomial")
    if counter is not None:
        if F.is_scalarlike():
            if not E.is_scalarlike():
                counter.sp_mult += 1
        else:
            counter.p_div += 1
    S, R = _divide_top_down(E, F, stop_degree=len(F.coeffs) - 1)
    return S, R


def _divide_top_down(E, F, stop_degree):
    """Peel leading remainder terms until deg(R) < stop_degree."""
    ctx = E.ctx
    rem = list(E.coeffs)
    dF = len(F.coeffs) - 1
    lead = F.coeffs[-1]
    quot = {}
    top = len(rem) - 1
    while top >= stop_degree:
        if not ctx.is_zero(rem[top]):
            k = top - dF
            q = rem[top] / lead
            quot[k] = q
            for j, f in enumerate(F.coeffs):
                rem[k + j] = rem[k + j] - q * f
        top -= 1
    size = max(quot) + 1 if quot else 0
    S = CausalPoly([quot.get(i, ctx.zero) for i in range(size)], ctx)
    return S, CausalPoly(rem, ctx)


def sgda_divide(E: CausalPoly, F: CausalPoly, M: int, counter=None):
    """Generalized division: unique (S, R) with E = F*S + R, z^-M | R, and
    deg(R) < deg(F) + M.  Requires gcd(F, z^-M) = 1, i.e. M = 0 or F left
    justified.  M = 0 coincides with classical division.
    """
    if F.is_zero():
        raise ZeroDivisor("generalized division by the zero polynomial")
    if M < 0:
        raise ValueError("multiplicity must be nonnegative")
    if M == 0:
        return classical_divide(E, F, counter)
    if not F.is_left_justified():
        raise DivisorNotLeftJustified(
            "SGDA with M > 0 needs a divisor with nonzero constant term")
    if counter is not None:
        if F.is_scalarlike():
            if not E.is_scalarlike():
                counter.sp_mult += 1
        else:
            counter.p_div += 1

    ctx = E.ctx
    f0 = F.coeffs[0]
    # Bottom-up: choose the lowest M quotient coefficients to zero r(0..M-1).
    s_low = []
    for k in range(M):
        acc = E.coeff(k)
        for i, s in enumerate(s_low):
            acc = acc - F.coeff(k - i) * s
        s_low.append(acc / f0)
    S_low = CausalPoly(s_low, ctx)
    E1 = E - F * S_low
    # Top-down: classical elimination of the remainder terms of degree
    # >= deg(F) + M; the two halves touch disjoint remainder coefficients.
    S_top, R = _divide_top_down(E1, F, stop_degree=len(F.coeffs) - 1 + M)
    S = S_low + S_top
    assert R.is_zero() or R.multiplicity() >= M
    return S, R


def sgda_divide_oracle(E: CausalPoly, F: CausalPoly, M: int):
    """Brute-force reference: solve the full linear system for S by Gaussian
    elimination over the exact field.  Independent of the production path.
    """
    if F.is_zero():
        raise ZeroDivisor("division by zero polynomial")
    if M > 0 and not F.is_left_justified():
        raise DivisorNotLeftJustified("divisor not left justified")
    ctx = E.ctx
    dF = len(F.coeffs) - 1
    dE = E.degree()
    s_deg = M - 1 if (E.is_zero() or dE <= dF + M - 1) else dE - dF
    if s_deg < 0:
        return CausalPoly.zero(ctx), E
    n_unknowns = s_deg + 1
    # Remainder length bound
    r_len = max((0 if E.is_zero() else dE + 1), dF + s_deg + 1)
    # Constraints: r(k) = 0 for k < M and for k >= dF + M
    rows = []
    rhs = []
    for k in list(range(M)) + list(range(dF + M, r_len)):
        rows.append([F.coeff(k - i) for i in range(n_unknowns)])
        rhs.append(E.coeff(k))
    sol = _solve_exact(rows, rhs, n_unknowns, ctx)
    S = CausalPoly(sol, ctx)
    return S, E - F * S


def _solve_exact(rows, rhs, n, ctx):
    """Gaussian elimination over the exact field; the system is consistent
    and determined by construction."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_of_col = {}
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(aug)) if not ctx.is_zero(aug[i][c])),
                   None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and not ctx.is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_of_col[c] = r
        r += 1
    sol = [ctx.zero] * n
    for c, pr in piv_of_col.items():
        sol[c] = aug[pr][n]
    return sol


def monomial_gcd(polys):
    """Common monomial divisor exponent: min multiplicity across the nonzero
    entries.  Valid whenever every common divisor divides a monomial, as is
    the case for rows/columns of perfect-reconstruction matrices."""
    mults = [p.multiplicity() for p in polys if not p.is_zero()]
    if not mults:
        raise AllZero("monomial gcd of all-zero family")
    return min(mults)
