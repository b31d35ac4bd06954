import cmath
import math

import pytest
from hypothesis import given, strategies as st

from borelhsp import ff
from borelhsp.errors import DegreeZero, DivisionByZero, FieldTooLarge, MixedContexts, NotPrime
from oracles import naive_is_square, naive_mul, naive_trace

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (5, 2), (3, 3), (11, 1), (13, 1)]


@pytest.fixture(params=FIELDS, ids=lambda f: f"{f[0]}^{f[1]}")
def ctx(request):
    return ff.make_field(*request.param)


def test_modulus_irreducible_and_smallest(ctx):
    assert ff.is_irreducible(ctx.modulus, ctx.p)
    # any monic degree-n poly that sorts before it (high degree first) is reducible
    for f in ff._monic_polys(ctx.p, ctx.n):
        if tuple(f) == ctx.modulus:
            break
        assert not ff.is_irreducible(f, ctx.p)


def test_known_constructions():
    assert ff.make_field(5).generator == 2
    f9 = ff.make_field(3, 2)
    assert f9.modulus == (1, 0, 1)
    assert f9.coeffs(f9.generator) == (1, 1)
    assert ff.make_field(2, 3).modulus == (1, 1, 0, 1)


def test_multiplication_matches_polynomial_oracle(ctx):
    for a in range(ctx.q):
        for b in range(ctx.q):
            assert ctx.mul(a, b) == naive_mul(a, b, ctx.p, ctx.modulus)


def test_trace_matches_frobenius_oracle(ctx):
    for a in range(ctx.q):
        assert ctx.trace(a) == naive_trace(a, ctx.p, ctx.modulus)


def test_eta_matches_exhaustive_squaring(ctx):
    if ctx.p == 2:
        pytest.skip("every element is a square in characteristic 2")
    for a in range(1, ctx.q):
        assert (ctx.eta(a) == 1) == naive_is_square(a, ctx.q, ctx.p, ctx.modulus)


def test_generator_has_full_order(ctx):
    assert len(set(ctx.exp)) == ctx.q - 1
    assert 0 not in ctx.exp


def test_additive_characters_orthogonal(ctx):
    for k in range(ctx.q):
        s = sum(ff.additive_char(ctx.coeffs(k), x) for x in ctx.elements())
        assert abs(s - (ctx.q if k == 0 else 0)) < 1e-9


def test_parse_field():
    assert ff.parse_field("3^2") is ff.make_field(3, 2)
    assert ff.parse_field("7") is ff.make_field(7)
    with pytest.raises(ValueError):
        ff.parse_field("x^2")


def test_errors():
    with pytest.raises(NotPrime):
        ff.make_field(9)
    with pytest.raises(DegreeZero):
        ff.make_field(3, 0)
    with pytest.raises(FieldTooLarge):
        ff.make_field(2, 30)
    a = ff.make_field(5).element(2)
    b = ff.make_field(7).element(2)
    with pytest.raises(MixedContexts):
        a + b
    with pytest.raises(DivisionByZero):
        a / ff.make_field(5).zero
    with pytest.raises(ZeroDivisionError):
        ff.make_field(5).zero.inverse()


@pytest.mark.parametrize("q,parity", [((5, 1), "even"), ((7, 1), "odd"), ((3, 2), "even"),
                                      ((11, 1), "odd"), ((13, 1), "even"), ((3, 3), "odd")])
def test_gauss_sum_parity(q, parity):
    ctx = ff.make_field(*q)
    g = ff.gauss_sum("eta", ctx.one)
    assert abs(g.modulus_sq - ctx.q) < 1e-9
    assert g.d_parity == parity


def test_trivial_gauss_sum():
    ctx = ff.make_field(7)
    assert abs(ff.gauss_sum("trivial", ctx.one).value + 1) < 1e-9
    assert abs(ff.gauss_sum("trivial", ctx.zero).value - 6) < 1e-9


def test_gauss_sum_accepts_coefficients():
    ctx = ff.make_field(3, 2)
    assert ff.gauss_sum("eta", (1, 0), ctx).value == ff.gauss_sum("eta", ctx.one).value
    with pytest.raises(ValueError):
        ff.gauss_sum("eta", (1, 0))


# -- algebraic laws ------------------------------------------------------------------

field_and_elems = st.sampled_from(FIELDS).flatmap(
    lambda f: st.tuples(st.just(ff.make_field(*f)),
                        st.lists(st.integers(0, f[0] ** f[1] - 1), min_size=3, max_size=3)))


@given(field_and_elems)
def test_field_axioms(data):
    ctx, (x, y, z) = data
    a, b, c = (ctx.element(v) for v in (x, y, z))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ctx.zero and a + ctx.zero == a and a * ctx.one == a
    if a:
        assert a * a.inverse() == ctx.one
        assert a ** (ctx.q - 1) == ctx.one


@given(field_and_elems)
def test_trace_is_additive_and_frobenius_invariant(data):
    ctx, (x, y, _) = data
    assert ctx.trace(ctx.add(x, y)) == (ctx.trace(x) + ctx.trace(y)) % ctx.p
    assert ctx.trace(ctx.pow(x, ctx.p)) == ctx.trace(x)


@given(field_and_elems)
def test_eta_multiplicative(data):
    ctx, (x, y, _) = data
    if ctx.p == 2 or x == 0 or y == 0:
        return
    assert ctx.eta(ctx.mul(x, y)) == ctx.eta(x) * ctx.eta(y)


def test_additive_char_is_homomorphism():
    ctx = ff.make_field(3, 2)
    k = (2, 1)
    for x in ctx.elements():
        for y in ctx.elements():
            lhs = ff.additive_char(k, x + y)
            assert cmath.isclose(lhs, ff.additive_char(k, x) * ff.additive_char(k, y), abs_tol=1e-12)
    assert math.isclose(abs(ff.additive_char(k, ctx.gen)), 1.0)
