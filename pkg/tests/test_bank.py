import random
from fractions import Fraction

import pytest

from conftest import rat_poly

from liftforge.errors import UnknownName
from liftforge.bank import (
    FilterBank,
    Signal,
    analyze,
    apply_matrix,
    bank_from_json,
    bank_to_json,
    builtin,
    builtin_names,
    cdf75_matrix,
    daub44_matrix,
    from_polyphase,
    lgt53_matrix,
    merge_phases,
    nondoublejust_matrix,
    split_phases,
    synthesize,
    to_polyphase,
)
from liftforge.cca import run_schema
from liftforge.eea import eea_factor
from liftforge.field import RATIONAL
from liftforge.pmat import expand, pr_check
from liftforge.signatures import enumerate_left


def test_builtin_names_and_unknown():
    assert set(builtin_names()) == {"cdf75", "daub44", "lgt53",
                                    "nondoublejust"}
    with pytest.raises(UnknownName):
        builtin("haar99")


def test_cdf75_taps():
    b = builtin("cdf75")
    assert b.h0.coeffs == rat_poly("3/32", "-3/8", "5/32", "5/4", "5/32",
                                   "-3/8", "3/32").coeffs
    assert b.h1.coeffs == rat_poly("1/8", "-1/2", "3/4", "-1/2", "1/8").coeffs
    assert to_polyphase(b) == cdf75_matrix()


def test_daub44_taps(q3):
    b = builtin("daub44")
    assert len(b.h0.coeffs) == 4 and len(b.h1.coeffs) == 4
    assert to_polyphase(b) == daub44_matrix()
    # lowpass sums to one under the chosen normalization
    total = b.h0.coeffs[0]
    for c in b.h0.coeffs[1:]:
        total = total + c
    assert total == q3.one


def test_nondoublejust_matrix(ctx):
    b = builtin("nondoublejust")
    assert b.h0 == rat_poly(2, 1, 1)
    assert b.h1 == rat_poly(0, 1, 1)
    assert to_polyphase(b) == nondoublejust_matrix()
    assert pr_check(to_polyphase(b)) == (Fraction(2), 0)


def test_lgt53_schema_runs_two_steps():
    H = lgt53_matrix()
    assert pr_check(H) == (Fraction(1), 1)
    c = run_schema(H, "(L,0,0,0; L,{0,1},1,0)")
    assert expand(c) == H
    assert c.n_steps == 3  # two chosen steps plus the forced terminal one


def test_polyphase_round_trip():
    for name in builtin_names():
        b = builtin(name)
        H = to_polyphase(b)
        assert to_polyphase(from_polyphase(H)) == H
        b2 = from_polyphase(H)
        assert b2.h0 == b.h0 and b2.h1 == b.h1


def test_split_merge_phases(ctx):
    rng = random.Random(41)
    for _ in range(50):
        x = Signal.from_values([rng.randint(-9, 9) for _ in range(17)], ctx,
                               origin=rng.randint(-5, 5))
        e, o = split_phases(x, ctx)
        assert merge_phases(e, o, ctx) == x.trimmed(ctx)


def test_unit_impulse_matches_direct_convolution(ctx):
    b = builtin("cdf75")
    H = to_polyphase(b)
    x = Signal.from_values([1], ctx)

    def direct(h, x):
        # convolve then keep even-indexed outputs
        out = {}
        for i, c in enumerate(h.coeffs):
            for j, s in enumerate(x.samples):
                n = i + j + x.origin
                out[n] = out.get(n, ctx.zero) + c * s
        kept = {n // 2: v for n, v in out.items() if n % 2 == 0}
        if not kept:
            return Signal((), 0)
        lo, hi = min(kept), max(kept)
        return Signal(tuple(kept.get(n, ctx.zero) for n in range(lo, hi + 1)),
                      lo).trimmed(ctx)

    y0, y1 = analyze(b, x)
    assert y0 == direct(b.h0, x)
    assert y1 == direct(b.h1, x)
    # and the subband samples read the polyphase matrix column
    assert y0 == Signal(tuple(H[0, 0].coeffs), 0).trimmed(ctx)


def test_zero_signal(ctx):
    b = builtin("lgt53")
    y0, y1 = analyze(b, Signal((), 0))
    assert y0.is_zero() and y1.is_zero()


def test_perfect_reconstruction_all_builtins():
    rng = random.Random(42)
    for name in builtin_names():
        b = builtin(name)
        ctx = b.ctx
        x = Signal.from_values([rng.randint(-99, 99) for _ in range(64)], ctx)
        y0, y1 = analyze(b, x)
        assert synthesize(b, y0, y1) == x.trimmed(ctx)


def test_cascade_analysis_equals_matrix_application():
    rng = random.Random(43)
    cases = []
    H = cdf75_matrix()
    cases.append((H, eea_factor(H, "col", 0)[0]))
    cases.append((H, run_schema(H, "(L,1,0,{0,1}; L,0,1,0; L,{0,1},0,0)")))
    D = daub44_matrix()
    cases.extend((D, c) for c in enumerate_left(D)[:3])
    L = lgt53_matrix()
    cases.append((L, run_schema(L, "(L,0,0,0; L,{0,1},1,0)")))
    for H, cascade in cases:
        ctx = H.ctx
        vals = [rng.randint(-30, 30) for _ in range(32)]
        x = Signal.from_values(vals, ctx)
        pair = split_phases(x, ctx)
        want = apply_matrix(H, pair)
        got = analyze(cascade, x)
        assert got == want
        assert synthesize(cascade, *got) == x.trimmed(ctx)


def test_ill_conditioned_cascade_reconstructs_exactly():
    H = cdf75_matrix()
    cascade, _ = eea_factor(H, "col", 0)
    rng = random.Random(44)
    x = Signal.from_values(
        [Fraction(rng.randint(-999, 999), rng.randint(1, 99))
         for _ in range(64)], RATIONAL)
    y0, y1 = analyze(cascade, x)
    assert synthesize(cascade, y0, y1) == x.trimmed(RATIONAL)


def test_bank_json_round_trip():
    for name in builtin_names():
        b = builtin(name)
        b2 = bank_from_json(bank_to_json(b))
        assert b2.h0 == b.h0 and b2.h1 == b.h1
