from fractions import Fraction

import pytest
from hypothesis import given

from conftest import scalars
from cqg.scalar import (
    ONE,
    Q,
    ZERO,
    Exponent,
    NonIntegralExponent,
    NotAUnit,
    Scalar,
    ScalarParseError,
    parse_affine,
    parse_scalar,
    q_pow,
)

LAM = Exponent.colour("lambda")
MU = Exponent.colour("mu")


def test_exponent_arithmetic():
    e = Exponent(1) - LAM + MU
    assert e.const == 1
    assert e.colour_part == {"lambda": -1, "mu": 1}
    assert (e - e).is_zero()
    assert e.scale(2) == Exponent(2, {"lambda": -2, "mu": 2})
    assert e.substitute({"lambda": MU}) == Exponent(1)
    assert e.evaluate({"lambda": Fraction(1, 2), "mu": 3}) == Fraction(7, 2)


def test_parse_affine():
    assert parse_affine("1 - lambda + mu") == Exponent(1) - LAM + MU
    assert parse_affine("-(1+2*lambda)") == -(Exponent(1) + LAM.scale(2))
    assert parse_affine("3/2") == Exponent(Fraction(3, 2))


def test_canonical_form_cancels():
    assert Q - Q == ZERO
    assert not (Q - Q)
    assert q_pow(LAM) * q_pow(-LAM) == ONE
    assert (Q + Q) == Scalar.monomial(1, 2)


def test_invert_and_units():
    x = Scalar.monomial(Exponent(1) + LAM, Fraction(3, 2), {"cp": -1})
    assert x * x.invert() == ONE
    with pytest.raises(NotAUnit):
        (Q + ONE).invert()


def test_specialize_exact_and_roots():
    x = q_pow(Exponent(Fraction(1, 2)) + LAM)
    assert x.specialize(4, {"lambda": 1}) == 8
    with pytest.raises(NonIntegralExponent):
        x.specialize(2, {"lambda": 1})
    assert x.specialize(2, {"lambda": 1}, sqrt=True) == 2 ** 3


def test_text_round_trip_examples():
    for text in ("q^(1 - lambda + mu) - q^(-1)", "2/3*q^(lambda)*cp^(-1)*cm", "0", "1"):
        s = parse_scalar(text)
        assert parse_scalar(str(s)) == s
    with pytest.raises(ScalarParseError):
        parse_scalar("q^(1")
    with pytest.raises(ScalarParseError):
        parse_scalar("x*q")


@given(scalars, scalars, scalars)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(scalars)
def test_str_parse_round_trip(a):
    assert parse_scalar(str(a)) == a


@given(scalars, scalars)
def test_specialization_is_a_homomorphism(a, b):
    point = dict(q_val=Fraction(9, 4), colours={"lambda": 2, "mu": -1}, units={"cp": 3, "cm": Fraction(1, 2)},
                 sqrt=True)
    assert (a * b).specialize(**point) == a.specialize(**point) * b.specialize(**point)
    assert (a + b).specialize(**point) == a.specialize(**point) + b.specialize(**point)


@given(scalars)
def test_colour_substitution_commutes_with_products(a):
    sub = {"lambda": Exponent(1) + MU}
    assert (a * a).colour_substitute(sub) == a.colour_substitute(sub) * a.colour_substitute(sub)
