from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from signedortho.numerics import ModeError, float_context
from signedortho.polynomials import (
    DivisionError,
    ParityError,
    Poly,
    deflate_root,
    derivative,
    divmod_poly,
    even_part_in_u,
    mul,
    scale,
    substitute_square,
)

rationals = st.fractions(min_value=-9, max_value=9, max_denominator=9)
polys = st.lists(rationals, max_size=7).map(Poly)

P3 = Poly([F(-3, 7), F(-3, 7), 1, 1])  # (1+x)(x^2 - 3/7)


def test_eval_examples():
    assert Poly([1, 1])(F(-1)) == 0
    assert Poly([F(-3, 5), 0, 1])(F(0)) == F(-3, 5)
    assert Poly()(F(7, 2)) == 0


def test_derivative_examples():
    assert derivative(Poly([F(-3, 5), 0, 1])) == Poly([0, 2])
    assert derivative(Poly([F(4)])).is_zero()
    assert derivative(P3) == Poly([F(-3, 7), 2, 3])


def test_ring_examples():
    assert mul(Poly([1, 1]), Poly([F(-3, 7), 0, 1])) == P3
    assert mul(P3, Poly([1])) == P3
    assert (P3 + scale(P3, F(-1))).is_zero()


def test_trailing_zeros_trimmed():
    p = Poly([1, 2, 0, 0])
    assert p.degree == 1 and p.coeffs == (1, 2)


def test_even_part():
    p4 = Poly([F(5, 21), 0, F(-10, 9), 0, 1])
    assert even_part_in_u(p4) == Poly([F(5, 21), F(-10, 9), 1])
    assert even_part_in_u(Poly([F(3)])) == Poly([F(3)])
    assert even_part_in_u(Poly([0, 0, 1])) == Poly([0, 1])
    with pytest.raises(ParityError):
        even_part_in_u(P3)


def test_even_part_float_flushes_roundoff():
    ctx = float_context(128)
    p = Poly([ctx.mpf(1), ctx.mpf(2) ** -100, ctx.mpf(-2)])
    assert even_part_in_u(p).degree == 1
    with pytest.raises(ParityError):
        even_part_in_u(Poly([ctx.mpf(1), ctx.mpf(2) ** -10, ctx.mpf(-2)]))


def test_deflate_examples():
    assert deflate_root(P3, F(-1)) == Poly([F(-3, 7), 0, 1])
    assert deflate_root(Poly([1, 1]), F(-1)) == Poly([1])
    assert deflate_root(Poly([-1, 0, 1]), F(1)) == Poly([1, 1])
    with pytest.raises(DivisionError):
        deflate_root(Poly([F(-3, 5), 0, 1]), F(-1))


def test_mixed_mode_rejected():
    ctx = float_context(128)
    with pytest.raises(ModeError):
        Poly([F(1), ctx.mpf(1)])
    with pytest.raises(ModeError):
        Poly([F(1), 1])(ctx.mpf(2))
    with pytest.raises(ModeError):
        Poly([F(1), 1]) + Poly([ctx.mpf(1)])


def test_immutable():
    with pytest.raises(AttributeError):
        P3.coeffs = ()


@given(polys, polys, rationals)
def test_product_evaluates_to_product(p, q, x):
    assert mul(p, q)(x) == p(x) * q(x)


@given(st.lists(rationals, max_size=5).map(Poly))
def test_even_part_roundtrip(q):
    assert even_part_in_u(substitute_square(q)) == q


@given(polys, rationals)
def test_deflate_roundtrip(p, r):
    p = p - Poly([p(r)])  # force a root at r
    if p.is_zero():
        return
    assert mul(deflate_root(p, r), Poly([-r, 1])) == p


@given(polys, polys.filter(lambda d: not d.is_zero()))
def test_division_identity(p, d):
    quo, rem = divmod_poly(p, d)
    assert mul(d, quo) + rem == p
    assert rem.degree < d.degree
