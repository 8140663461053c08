import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from chowring.algebra import GradedPolynomial, ProfileError
from chowring.nonlinear import (
    NonlinearElement,
    NonlinearRing,
    lambda_inverse,
    lambda_map,
    nl_multiply,
    presentation_dims,
    presentation_normal_form,
    scaled_relations,
    smonomial_key,
    verify_sigma_basis,
)
from chowring.schubert import GrassmannRing, multiply, poincare_dims, sigma_relations

RINGS = [(k, r, d) for r in range(1, 5) for k in range(1, min(2, r) + 1) for d in range(1, 4)]


def gens(profile):
    return [GradedPolynomial.generator(profile, i) for i in range(len(profile))]


# -- lambda --------------------------------------------------------------------------


def test_lambda_generator_examples():
    ring = NonlinearRing(1, 3, 2)
    grass = ring.grass
    assert lambda_map(ring.gen(1)) == grass.sigma((1,)) * 4
    assert lambda_map(ring.gen(1) * ring.gen(2)) == grass.sigma((2, 1)) * 32
    assert lambda_map(ring.one()) == grass.one()
    flat = NonlinearRing(1, 3, 1)
    assert all(lambda_map(flat.gen(j)) == flat.grass.special(j) for j in (1, 2))


def test_lambda_inverse_examples():
    ring = NonlinearRing(1, 3, 2)
    assert lambda_inverse(ring.grass.sigma((1,)), ring) == ring.gen(1) * Fraction(1, 4)
    x = lambda_inverse(ring.grass.sigma((1, 1)), ring)
    assert x == ring.gen(1) ** 2 * Fraction(1, 16) - ring.gen(2) * Fraction(1, 8)
    assert lambda_map(x) == ring.grass.sigma((1, 1))


def test_lambda_inverse_wrong_ring():
    with pytest.raises(ProfileError):
        lambda_inverse(GrassmannRing(1, 4).one(), NonlinearRing(1, 3, 2))


def test_multiply_examples():
    ring = NonlinearRing(1, 2, 3)
    s1 = ring.gen(1)
    assert (s1 * s1 * s1).is_zero()
    ring = NonlinearRing(1, 3, 2)
    s1, s2 = ring.gen(1), ring.gen(2)
    assert nl_multiply(s1, s1 ** 2) == s1 * s2 * 4
    assert ring.one() * s2 == s2


def test_multiply_ring_mismatch():
    with pytest.raises(ProfileError):
        nl_multiply(NonlinearRing(1, 3, 2).gen(1), NonlinearRing(1, 3, 3).gen(1))


def test_canonical_order():
    mons = [(2,), (1, 1), (1,), (), (1, 2), (3,)]
    assert sorted(mons, key=smonomial_key) == [(), (1,), (2,), (1, 1), (3,), (1, 2)]


def test_json_round_trip():
    ring = NonlinearRing(2, 4, 3)
    x = ring.gen(1) * Fraction(-2, 7) + ring.gen(1) * ring.gen(2) * 3
    data = x.to_json()
    assert (data["k"], data["r"], data["d"]) == (2, 4, 3)
    assert NonlinearElement.from_json(data) == x


# -- relations ------------------------------------------------------------------------


def test_scaled_relation_examples():
    s1, = gens((1,))
    for d in (1, 2, 5):
        assert scaled_relations(1, 2, d) == [s1 ** 3]
    s1, s2 = gens((1, 2))
    for d in (1, 2, 3):
        assert scaled_relations(1, 3, d) == [s1 ** 3 - s1 * s2 * (2 * d), s1 ** 2 * s2 - s2 ** 2 * d]
    assert scaled_relations(2, 2, 4) == []


@pytest.mark.parametrize("k, r", [(1, 2), (1, 3), (2, 4), (1, 4)])
def test_scaled_relations_d1_are_grassmannian(k, r):
    assert scaled_relations(k, r, 1) == [rel.content_primitive() for rel in sigma_relations(GrassmannRing(k, r))]


def _sympy_scaled(k, r, d):
    """Substitute sigma_j = s_j / d^(k+j) symbolically and clear denominators."""
    grass = GrassmannRing(k, r)
    n = r - k
    sig = sympy.symbols(f"g1:{n + 1}")
    s = sympy.symbols(f"s1:{n + 1}")
    out = []
    for rel in sigma_relations(grass):
        expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([g ** e for g, e in zip(sig, exps)]) for exps, c in rel.terms.items())
        expr = expr.subs({g: sj / sympy.Integer(d) ** (k + j + 1) for j, (g, sj) in enumerate(zip(sig, s))})
        poly = sympy.Poly(sympy.together(expr).as_numer_denom()[0], *s)
        out.append(poly.primitive()[1])
    return out, s


@pytest.mark.parametrize("k, r, d", [(1, 3, 2), (1, 4, 3), (2, 4, 2), (2, 5, 3)])
def test_scaled_relations_match_sympy_substitution(k, r, d):
    expected, syms = _sympy_scaled(k, r, d)
    got = scaled_relations(k, r, d)
    assert len(got) == len(expected)
    for rel, poly in zip(got, expected):
        mine = sympy.Poly(
            sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([x ** e for x, e in zip(syms, exps)]) for exps, c in rel.terms.items()),
            *syms,
        )
        assert mine == poly or mine == -poly


@pytest.mark.parametrize("k, r, d", RINGS)
def test_relations_vanish_under_scaling(k, r, d):
    ring = NonlinearRing(k, r, d)
    images = [ring.grass.special(j) * Fraction(d) ** (k + j) for j in ring.profile]
    for rel in scaled_relations(k, r, d):
        assert rel.evaluate(images, ring.grass.one()).is_zero()


@pytest.mark.parametrize("k, r, d", RINGS)
def test_presentation_dims_equal_grassmannian(k, r, d):
    ring = NonlinearRing(k, r, d)
    assert presentation_dims(ring) == poincare_dims(ring.grass) + [0]


@pytest.mark.parametrize("k, r, d", [(1, 3, 2), (2, 4, 3), (1, 4, 3)])
def test_presentation_route_agrees_with_transport(k, r, d):
    ring = NonlinearRing(k, r, d)
    rng = random.Random(k * 100 + r * 10 + d)
    for _ in range(20):
        deg = rng.randint(0, ring.top_degree + 1)
        terms = {m: Fraction(rng.randint(-4, 4)) for m in ring.monomials(deg)}
        exps_terms = {}
        for m, c in terms.items():
            e = [0] * ring.ngens
            for j in m:
                e[j - 1] += 1
            exps_terms[tuple(e)] = c
        f = GradedPolynomial(ring.profile, exps_terms)
        assert presentation_normal_form(ring, f) == ring.from_polynomial(f).terms


@pytest.mark.parametrize("k, r, d", RINGS)
def test_lambda_multiplicative_on_generators(k, r, d):
    ring = NonlinearRing(k, r, d)
    g = ring.grass
    for a in ring.profile:
        assert lambda_map(ring.gen(a)) == g.special(a) * d ** (k + a)
        for b in ring.profile:
            lhs = lambda_map(ring.gen(a) * ring.gen(b))
            assert lhs == multiply(g.special(a), g.special(b)) * d ** (2 * k + a + b)


@pytest.mark.parametrize("k, r, d", RINGS)
def test_standard_monomials_span(k, r, d):
    ring = NonlinearRing(k, r, d)
    for deg in range(ring.top_degree + 1):
        assert len(ring.standard_monomials(deg)) == len(ring.grass.partitions(deg))


def _random(ring, rng):
    terms = {}
    for deg in range(ring.top_degree + 1):
        for m in ring.monomials(deg):
            if rng.random() < 0.3:
                terms[m] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return ring.element(terms)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(RINGS), st.integers(min_value=0, max_value=10 ** 6))
def test_transported_ring_axioms(krd, seed):
    ring = NonlinearRing(*krd)
    rng = random.Random(seed)
    a, b, c = (_random(ring, rng) for _ in range(3))
    assert a * ring.one() == a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert lambda_map(a * b) == lambda_map(a) * lambda_map(b)
    assert lambda_inverse(lambda_map(a), ring) == a


# -- sigma basis -----------------------------------------------------------------------


def test_sigma_basis_examples():
    for d in (1, 2, 3):
        rep = verify_sigma_basis(2, d)
        assert rep.count == 3 and rep.passed
        assert sorted(rep.elements) == sorted([(), (1,), (1, 1)])
    rep = verify_sigma_basis(3, 2)
    assert (rep.count, rep.rank, rep.ring_dimension) == (6, 6, 6)
    rep = verify_sigma_basis(1, 2)
    assert rep.elements == [()] and rep.passed


@pytest.mark.parametrize("r", range(1, 6))
@pytest.mark.parametrize("d", range(1, 4))
def test_sigma_basis(r, d):
    rep = verify_sigma_basis(r, d)
    assert rep.passed
    assert rep.count == r * (r + 1) // 2 == sum(poincare_dims(GrassmannRing(1, r)))
