"""Coefficient fields: exact rationals, the quadratic extension Q(sqrt(d)),
and floating point with an explicit zero tolerance.

Scalars are plain values (``Fraction``, ``Quadratic``, ``float``) so that the
polynomial layer can use ordinary operators.  A :class:`FieldContext` fixes the
realization, provides parsing/formatting, the zero predicate (tolerance-aware
for floats), and embedding into ``float`` for the numeric conditioning code.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt, sqrt

from .errors import DivisionByZero, MixedRealizations, ParseError

ROOT_CHARS = ("√", "sqrt")  # accepted spellings of the radical sign


class Quadratic:
    """Element a + b*sqrt(d) of Q(sqrt(d)) for a fixed square-free d > 1.

    a and b are Fractions; arithmetic is exact.  Only ints are coerced
    implicitly (for literals); combining values over different radicands
    raises :class:`MixedRealizations`.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    def _coerce(self, other):
        if isinstance(other, Quadratic):
            if other.d != self.d:
                raise MixedRealizations(
                    f"cannot mix Q(sqrt({self.d})) with Q(sqrt({other.d}))")
            return other
        if isinstance(other, int):
            return Quadratic(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quadratic(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quadratic(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quadratic(self.a * o.a + self.b * o.b * self.d,
                         self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def inverse(self):
        # (a + b sqrt d)^-1 = (a - b sqrt d) / (a^2 - b^2 d); the norm is
        # nonzero for nonzero elements because sqrt(d) is irrational.
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise DivisionByZero("division by zero in Q(sqrt(d))")
        return Quadratic(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return Quadratic(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, Quadratic):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            # the rational subfield embeds at b = 0
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * sqrt(self.d)

    def __repr__(self):
        return f"Quadratic({self.a}, {self.b}, d={self.d})"


def _is_square_free(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class FieldContext:
    """Abstract field realization.  Concrete contexts are singletonish values
    compared by kind and parameters."""

    kind = ""

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        raise NotImplementedError

    def from_fraction(self, q):
        raise NotImplementedError

    def is_zero(self, a):
        raise NotImplementedError

    def to_float(self, a):
        raise NotImplementedError

    def parse(self, text):
        raise NotImplementedError

    def format(self, a):
        raise NotImplementedError

    def check(self, a):
        """Validate that a belongs to this realization; return it unchanged."""
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.kind,)

    def __repr__(self):
        return f"FieldContext({self.spec()})"

    def spec(self):
        """Short text form used in file formats ('rational', 'quadratic:3', ...)."""
        return self.kind


class RationalContext(FieldContext):
    kind = "rational"

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def is_zero(self, a):
        return a == 0

    def to_float(self, a):
        return float(a)

    def parse(self, text):
        num, pos = _parse_rational_text(text)
        if pos != len(text.strip()):
            raise ParseError(f"trailing input in {text!r}", pos)
        return num

    def format(self, a):
        return _format_fraction(a)

    def check(self, a):
        if not isinstance(a, Fraction):
            raise MixedRealizations(f"expected rational scalar, got {a!r}")
        return a


class QuadraticContext(FieldContext):
    kind = "quadratic"

    def __init__(self, d):
        d = int(d)
        if not _is_square_free(d):
            raise ValueError(f"radicand must be square-free and > 1, got {d}")
        self.d = d

    def _key(self):
        return (self.kind, self.d)

    def spec(self):
        return f"quadratic:{self.d}"

    def from_int(self, n):
        return Quadratic(n, 0, self.d)

    def from_fraction(self, q):
        return Quadratic(q, 0, self.d)

    def is_zero(self, a):
        return a.a == 0 and a.b == 0

    def to_float(self, a):
        return float(a)

    def parse(self, text):
        return _parse_quadratic(text, self.d)

    def format(self, a):
        return _format_quadratic(a)

    def check(self, a):
        if not isinstance(a, Quadratic) or a.d != self.d:
            raise MixedRealizations(
                f"expected scalar in Q(sqrt({self.d})), got {a!r}")
        return a


class FloatContext(FieldContext):
    kind = "float"

    def __init__(self, eps=1e-12):
        if eps < 0:
            raise ValueError("zero tolerance must be nonnegative")
        self.eps = float(eps)

    def _key(self):
        return (self.kind, self.eps)

    def spec(self):
        return "float"

    def from_int(self, n):
        return float(n)

    def from_fraction(self, q):
        return float(q)

    def is_zero(self, a):
        return abs(a) <= self.eps

    def to_float(self, a):
        return a

    def parse(self, text):
        s = text.strip()
        try:
            if "/" in s:
                return float(Fraction(s))
            return float(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"invalid float scalar {text!r}: {exc}", 0)

    def format(self, a):
        return repr(a)

    def check(self, a):
        if not isinstance(a, float):
            raise MixedRealizations(f"expected float scalar, got {a!r}")
        return a


RATIONAL = RationalContext()


def context_from_spec(spec):
    """Inverse of FieldContext.spec; accepts 'rational', 'quadratic:D', 'float'."""
    spec = spec.strip().lower()
    if spec == "rational":
        return RATIONAL
    if spec.startswith("quadratic:"):
        return QuadraticContext(int(spec.split(":", 1)[1]))
    if spec == "float":
        return FloatContext()
    raise ParseError(f"unknown field spec {spec!r}")


def arith(a, b, kind, ctx):
    """Field operation dispatch with the spec'd error contract."""
    ctx.check(a)
    ctx.check(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if ctx.is_zero(b):
            raise DivisionByZero("scalar division by zero")
        return a / b
    raise ValueError(f"unknown arith kind {kind!r}")


def is_zero(a, ctx):
    return ctx.is_zero(a)


def parse_scalar(text, ctx):
    return ctx.parse(text)


def format_scalar(a, ctx):
    return ctx.format(a)


# ---------------------------------------------------------------------------
# text forms


def _format_fraction(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _format_quadratic(x):
    if x.b == 0:
        return _format_fraction(x.a)
    root = f"√{x.d}"
    if x.b == 1:
        bpart = root
    elif x.b == -1:
        bpart = f"-{root}"
    else:
        bpart = f"{_format_fraction(x.b)}{root}"
    if x.a == 0:
        return bpart
    sign = "+" if x.b > 0 else "-"
    mag = bpart.lstrip("-")
    return f"{_format_fraction(x.a)}{sign}{mag}"


_INT_RE = re.compile(r"\d+")


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.skip_ws()

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch):
        if self.peek() == ch:
            self.pos += 1
            self.skip_ws()
            return True
        return False

    def expect(self, ch):
        if not self.eat(ch):
            raise ParseError(f"expected {ch!r}", self.pos)

    def integer(self):
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            raise ParseError("expected integer", self.pos)
        self.pos = m.end()
        self.skip_ws()
        return int(m.group())

    def try_root(self):
        for tok in ROOT_CHARS:
            if self.text.startswith(tok, self.pos):
                self.pos += len(tok)
                paren = self.eat("(")
                n = self.integer()
                if paren:
                    self.expect(")")
                return n
        return None

    def done(self):
        return self.pos >= len(self.text)


def _parse_rational_text(text):
    s = text.strip()
    sc = _Scanner(s)
    sign = -1 if sc.eat("-") else 1
    if sc.eat("+"):
        pass
    num = sc.integer()
    if sc.eat("/"):
        den = sc.integer()
        if den == 0:
            raise ParseError("zero denominator", sc.pos)
        return Fraction(sign * num, den), sc.pos
    return Fraction(sign * num), sc.pos


def _parse_quad_term(sc, d):
    """One signed term: rational, b*sqrt(d), sqrt(d)/q, ... Returns Quadratic."""
    sign = 1
    while True:
        if sc.eat("-"):
            sign = -sign
        elif sc.eat("+"):
            pass
        else:
            break
    coef = None
    if sc.peek().isdigit():
        num = sc.integer()
        if sc.eat("/"):
            coef = Fraction(num, sc.integer())
        else:
            coef = Fraction(num)
    root = sc.try_root()
    if root is not None:
        if root != d:
            raise ParseError(f"radicand {root} does not match context sqrt({d})",
                             sc.pos)
        b = Fraction(1) if coef is None else coef
        if sc.eat("/"):
            b /= sc.integer()
        return Quadratic(0, sign * b, d)
    if coef is None:
        raise ParseError("expected number or radical", sc.pos)
    return Quadratic(sign * coef, 0, d)


def _parse_quad_sum(sc, d):
    total = _parse_quad_term(sc, d)
    while sc.peek() in ("+", "-"):
        total = total + _parse_quad_term(sc, d)
    return total


def _parse_quadratic(text, d):
    sc = _Scanner(text.strip())
    outer_sign = 1
    mark = sc.pos
    if sc.eat("-"):
        outer_sign = -1
    if sc.eat("("):
        total = _parse_quad_sum(sc, d)
        sc.expect(")")
        if sc.eat("/"):
            den = sc.integer()
            if den == 0:
                raise ParseError("zero denominator", sc.pos)
            total = total * Quadratic(Fraction(1, den), 0, d)
        total = total * outer_sign
    else:
        sc.pos = mark  # the sign belongs to the first term
        total = _parse_quad_sum(sc, d)
    if not sc.done():
        raise ParseError(f"trailing input in {text!r}", sc.pos)
    return total
