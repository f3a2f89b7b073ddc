import random
from fractions import Fraction

import pytest

from liftforge.bank import cdf75_matrix, daub44_matrix
from liftforge.field import RATIONAL, QuadraticContext
from liftforge.pmat import (
    Cascade,
    Delay,
    Gain,
    Lift,
    Perm,
    expand_factors,
    normalize,
)
from liftforge.poly import CausalPoly


@pytest.fixture
def ctx():
    return RATIONAL


@pytest.fixture
def q3():
    return QuadraticContext(3)


def rat_poly(*coeffs):
    return CausalPoly([RATIONAL.from_fraction(Fraction(c)) for c in coeffs],
                      RATIONAL)


@pytest.fixture
def rp():
    return rat_poly


@pytest.fixture
def cdf75():
    return cdf75_matrix()


@pytest.fixture
def daub44():
    return daub44_matrix()


def random_poly(rng, max_deg=3, zero_ok=True, ctx=RATIONAL):
    while True:
        deg = rng.randint(0, max_deg)
        coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                  for _ in range(deg + 1)]
        p = CausalPoly([ctx.from_fraction(c) for c in coeffs], ctx)
        if zero_ok or not p.is_zero():
            return p


def random_pr_factors(rng, n_factors=4, max_deg=2, ctx=RATIONAL):
    """Random factor list whose product is a valid PR matrix."""
    factors = []
    chi = rng.randint(0, 1)
    for _ in range(n_factors):
        kind = rng.choice(("lift", "delay", "perm", "gain"))
        if kind == "lift":
            factors.append(Lift(chi, random_poly(rng, max_deg, zero_ok=False)))
            chi = 1 - chi
        elif kind == "delay":
            factors.append(Delay(rng.randint(0, 1), rng.randint(0, 2)))
        elif kind == "perm":
            factors.append(Perm("J"))
        else:
            k0 = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
            k1 = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
            factors.append(Gain(ctx.from_fraction(k0), ctx.from_fraction(k1)))
    if not any(isinstance(f, Lift) for f in factors):
        factors.append(Lift(0, random_poly(rng, max_deg, zero_ok=False)))
    return factors


def random_pr_matrix(rng, n_factors=4, max_deg=2, ctx=RATIONAL):
    return expand_factors(random_pr_factors(rng, n_factors, max_deg, ctx), ctx)


def random_cascade(rng, n_steps=3, max_deg=2, ctx=RATIONAL) -> Cascade:
    """Random cascade in standard causal lifting form on a coprimified base."""
    factors = [Gain(ctx.from_fraction(Fraction(rng.choice([-2, -1, 1, 2]))),
                    ctx.from_fraction(Fraction(rng.choice([-2, -1, 1, 2]), 2)))]
    chi = rng.randint(0, 1)
    for n in range(n_steps - 1, -1, -1):
        factors.append(Lift(chi, random_poly(rng, max_deg, zero_ok=False)))
        if n > 0 and rng.random() < 0.5:
            factors.append(Delay(chi, rng.randint(1, 2)))
        chi = 1 - chi
    if rng.random() < 0.5:
        factors.append(Perm("J"))
    return normalize(factors, ctx)
