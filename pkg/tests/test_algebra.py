from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowring import oracles
from chowring.algebra import (
    GradedPolynomial,
    InverseChernSeries,
    NonInvertibleError,
    ProfileError,
    TruncatedSeries,
    chern_series,
    format_rational,
    monomials_of_degree,
    p_class,
    parse_rational,
    poly_arith,
    series_inverse,
)

PROFILE = (1, 2, 3)


def c(i, profile=PROFILE):
    return GradedPolynomial.generator(profile, i - 1)


def one(profile=PROFILE):
    return GradedPolynomial.constant(profile)


# -- rationals --------------------------------------------------------------------


@pytest.mark.parametrize(
    "value, text", [(Fraction(3, 2), "3/2"), (Fraction(-4, 2), "-2"), (Fraction(0), "0"), (Fraction(6, -9), "-2/3")]
)
def test_rational_serialization(value, text):
    assert format_rational(value) == text
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["0.5", "1/0x", "abc", "", "1e3"])
def test_parse_rational_rejects_inexact(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_fraction_normalization_is_schoolbook():
    assert Fraction(1, 6) + Fraction(1, 3) == Fraction(1, 2)
    x = Fraction(-10, 4)
    assert (x.numerator, x.denominator) == (-5, 2)


# -- poly_arith -----------------------------------------------------------------


def test_add_inverse_is_zero():
    assert poly_arith("add", c(1), -c(1)).is_zero()


def test_mul_monomial():
    assert poly_arith("mul", c(1), c(1)) == GradedPolynomial(PROFILE, {(2, 0, 0): 1})


def test_mul_schoolbook():
    lhs = poly_arith("mul", c(1) ** 2 - c(2), c(1))
    assert lhs == GradedPolynomial(PROFILE, {(3, 0, 0): 1, (1, 1, 0): -1})
    assert lhs.degree == 3


def test_scale():
    assert poly_arith("scale", c(2), Fraction(1, 3)).coefficient((0, 1, 0)) == Fraction(1, 3)
    assert poly_arith("scale", c(2), 0).is_zero()


def test_profile_mismatch():
    with pytest.raises(ProfileError):
        c(1) + GradedPolynomial.generator((1, 2), 0)
    with pytest.raises(ProfileError):
        GradedPolynomial((1, 2), {(1,): 1})


def test_no_stored_zeros():
    p = GradedPolynomial(PROFILE, {(1, 0, 0): 1, (0, 1, 0): 0})
    assert dict(p.terms) == {(1, 0, 0): Fraction(1)}


def test_json_round_trip():
    p = c(1) ** 3 * Fraction(-3, 4) + c(3) * 2
    recs = p.to_json()
    assert recs[0] == {"exponents": [3, 0, 0], "coeff": "-3/4"}
    assert GradedPolynomial.from_json(PROFILE, recs) == p


def test_monomials_of_degree_counts():
    assert monomials_of_degree((1, 2), 4) == [(4, 0), (2, 1), (0, 2)]
    assert monomials_of_degree((), 0) == [()]
    assert monomials_of_degree((1,), -1) == []


homogeneous_polys = st.integers(min_value=0, max_value=4).flatmap(
    lambda deg: st.lists(
        st.tuples(st.sampled_from(monomials_of_degree(PROFILE, deg) or [(0, 0, 0)]), st.fractions(max_denominator=5)),
        max_size=4,
    ).map(lambda items: GradedPolynomial(PROFILE, dict(items)))
)


@settings(max_examples=60, deadline=None)
@given(homogeneous_polys, homogeneous_polys, homogeneous_polys)
def test_mul_commutative_associative(a, b, c_):
    assert a * b == b * a
    assert (a * b) * c_ == a * (b * c_)
    if not (a.is_zero() or b.is_zero()):
        assert (a * b).degree == a.degree + b.degree


# -- series ----------------------------------------------------------------------


def test_series_inverse_identity():
    s = TruncatedSeries(4, (one(),))
    inv = series_inverse(s, 4)
    assert inv[0] == 1
    assert all(inv[j].is_zero() for j in range(1, 5))


def test_series_inverse_two_generators():
    prof = (1, 2)
    s = TruncatedSeries(2, (one(prof), c(1, prof), c(2, prof)))
    inv = series_inverse(s, 2)
    assert inv[1] == -c(1, prof)
    assert inv[2] == c(1, prof) ** 2 - c(2, prof)
    assert (s * inv).is_one()


def test_series_inverse_three_generators():
    s = chern_series(2, 3)
    inv = series_inverse(s, 3)
    assert inv[3] == -c(1) ** 3 + c(1) * c(2) * 2 - c(3)
    assert (s * inv).is_one()


def test_series_non_invertible():
    with pytest.raises(NonInvertibleError):
        series_inverse(TruncatedSeries(1, (one() * 2,)), 3)


def test_series_rejects_inhomogeneous_coefficient():
    with pytest.raises(ValueError):
        TruncatedSeries(1, (one(), c(2)))


@pytest.mark.parametrize("k", range(4))
def test_inverse_matches_geometric_series(k):
    inv = series_inverse(chern_series(k, 12), 12)
    brute = oracles.inverse_series_brute(k, 12)
    for j in range(13):
        assert dict(inv[j].terms) == brute[j]


# -- p_class ---------------------------------------------------------------------


def test_p_class_examples():
    for k in range(4):
        assert p_class(0, k) == 1
        assert p_class(1, k) == -GradedPolynomial.generator(tuple(range(1, k + 2)), 0)
    assert p_class(2, 0) == GradedPolynomial((1,), {(2,): 1})


@pytest.mark.parametrize("k", range(4))
def test_p_class_inverts_chern_series(k):
    table = InverseChernSeries(k)
    n = 12
    p = TruncatedSeries(n, tuple(p_class(j, k, table) for j in range(n + 1)))
    assert (chern_series(k, n) * p).is_one()
    assert all(p[j].degree == j for j in range(n + 1) if not p[j].is_zero())


def test_p_class_memo_handles_are_independent():
    a, b = InverseChernSeries(1), InverseChernSeries(1)
    assert a.p(5) == b.p(5)
    assert a._p is not b._p
    with pytest.raises(ProfileError):
        p_class(2, 2, a)
