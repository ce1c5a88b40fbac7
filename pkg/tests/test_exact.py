from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cfrow.errors import ZeroDeterminant
from cfrow.exact import (
    IDENTITY,
    INF,
    Mat2Z,
    RationalInterval,
    mat_product,
    mobius_apply,
)

A0 = Mat2Z(1, 0, 1, 1)
A1 = Mat2Z(0, 1, 1, 1)


def test_identity_action():
    assert mobius_apply(IDENTITY, Fraction(3, 7)) == Fraction(3, 7)


def test_infinity_conventions():
    assert mobius_apply(Mat2Z(0, 1, 1, 1), INF) == 0
    assert mobius_apply(Mat2Z(1, 0, 0, 1), INF) is INF
    assert mobius_apply(Mat2Z(1, 1, 1, 0), Fraction(0)) is INF


def test_basic_evaluation():
    assert mobius_apply(Mat2Z(0, 1, 1, 2), Fraction(0)) == Fraction(1, 2)


def test_zero_determinant_rejected():
    with pytest.raises(ZeroDeterminant):
        mobius_apply(Mat2Z(1, 2, 2, 4), Fraction(1))


def test_products():
    assert mat_product([IDENTITY, IDENTITY]) == IDENTITY
    assert mat_product([A0, A1]) == Mat2Z(0, 1, 1, 2)
    m = mat_product([A0] * 7)
    assert m == Mat2Z(1, 0, 7, 1)


nonzero = st.integers(-30, 30).filter(lambda v: v != 0)
entries = st.tuples(st.integers(-20, 20), st.integers(-20, 20),
                    st.integers(-20, 20), st.integers(-20, 20))
mats = entries.map(lambda t: Mat2Z(*t)).filter(lambda m: m.det() != 0)
points = st.one_of(
    st.just(INF),
    st.fractions(min_value=-50, max_value=50, max_denominator=40),
)


@given(mats, nonzero, points)
def test_scalar_multiples_act_identically(m, r, z):
    assert mobius_apply(r * m, z) == mobius_apply(m, z)


@given(mats, mats, points)
def test_action_is_a_homomorphism(m1, m2, z):
    assert mobius_apply(m1 @ m2, z) == mobius_apply(m1, mobius_apply(m2, z))


@given(st.lists(mats, min_size=1, max_size=6))
def test_determinant_multiplicative(ms):
    prod = mat_product(ms)
    expected = 1
    for m in ms:
        expected *= m.det()
    assert prod.det() == expected


def test_adjugate_inverts_as_action():
    m = Mat2Z(2, 3, 1, 4)
    z = Fraction(5, 9)
    assert mobius_apply(m.adjugate(), mobius_apply(m, z)) == z


def test_interval_refinement_monotone():
    iv = RationalInterval(Fraction(0), Fraction(1))
    iv2 = iv.refine_to(RationalInterval(Fraction(1, 4), Fraction(1, 2)))
    assert iv2.lo >= iv.lo and iv2.hi <= iv.hi
    with pytest.raises(ValueError):
        iv2.refine_to(RationalInterval(Fraction(0), Fraction(1)))


def test_interval_predicates():
    iv = RationalInterval(Fraction(1, 3), Fraction(1, 2))
    assert iv.contains(Fraction(2, 5))
    assert iv.strictly_below(Fraction(3, 5))
    assert not iv.intersects(RationalInterval(Fraction(3, 5), Fraction(1)))
    assert RationalInterval.point(Fraction(1, 2)).is_point()
