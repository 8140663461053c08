"""Invariant suites shared by ``chowring verify`` and the acceptance tests.

Each suite yields :class:`Case` records; a suite passes when every case does.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from . import git, linalg, oracles
from .algebra import GradedPolynomial, chern_series, monomials_of_degree, series_inverse
from .nonlinear import (
    NonlinearElement,
    NonlinearRing,
    lambda_inverse,
    lambda_map,
    nl_multiply,
    presentation_dims,
    presentation_normal_form,
    scaled_relations,
    smonomial_to_exps,
    verify_sigma_basis,
)
from .projbundle import XiPolynomial, bilt_expected, bilt_pushforward, pushforward
from .schubert import (
    GrassmannRing,
    complement,
    duality_pair,
    equivariant_point_dims,
    multiply,
    poincare_dims,
    to_schubert,
)


@dataclass
class Case:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Bounds:
    """Parameter limits for the suites; defaults are the acceptance bounds."""

    k: int = 2
    r: int = 4
    n: int = 6
    d: int = 3
    alpha: int = 3
    order: int = 12
    q: tuple[int, ...] = (3, 4)
    samples: int = 20
    basis_changes: int = 10
    tuples: int = 25
    random_elements: int = 100
    seed: int = git.DEFAULT_SEED


# -- series ------------------------------------------------------------------------


def suite_series(b: Bounds) -> Iterator[Case]:
    for k in range(b.k + 1):
        c = chern_series(k, b.order)
        p = series_inverse(c, b.order)
        prod = c * p
        yield Case(f"series k={k} order={b.order}: c(S) * inverse == 1", prod.is_one())
        brute = oracles.inverse_series_brute(k, b.order)
        same = all(dict(p[j].terms) == brute[j] for j in range(b.order + 1))
        yield Case(f"series k={k}: recursion matches geometric-series expansion", same)
        homog = all(p[j].is_zero() or p[j].degree == j for j in range(b.order + 1))
        yield Case(f"series k={k}: p_j homogeneous of degree j", homog)


# -- relations / dimensions / duality ----------------------------------------------


def suite_relations(b: Bounds) -> Iterator[Case]:
    for r in range(2, b.r + 1):
        for k in range(1, r):
            ring = GrassmannRing(k, r)
            vanish = all(to_schubert(ring, ring.p_table.p(j)).is_zero() for j in range(r - k + 1, r + 3))
            alive = all(to_schubert(ring, ring.p_table.p(j)) == ring.special(j) for j in range(1, r - k + 1))
            yield Case(f"relations k={k} r={r}: p_j = 0 for {r - k} < j <= {r + 2}", vanish)
            yield Case(f"relations k={k} r={r}: p_j = sigma_j != 0 for 1 <= j <= {r - k}", alive)


def suite_dims(b: Bounds) -> Iterator[Case]:
    for r in range(1, b.n + 1):
        for k in range(0, r):
            ring = GrassmannRing(k, r)
            dims = poincare_dims(ring)
            brute = [len(oracles.box_partitions_brute(j, k + 1, r - k)) for j in range(ring.top_degree + 1)]
            ok = dims == brute and sum(dims) == ring.dimension == oracles.box_count(k + 1, r - k)
            yield Case(f"dims k={k} r={r}: {dims}", ok)
    for k in range(0, b.k + 1):
        for n in range(k + 1, b.n + 1):
            eq = equivariant_point_dims(k, n - k)
            brute = [oracles.monomial_count_brute(k, j) for j in range(n - k + 1)]
            prefix = poincare_dims(GrassmannRing(k, n))[: n - k + 1]
            yield Case(f"equivariant point k={k} n={n}: {eq}", eq == brute == prefix)


def is_permutation_matrix(m: list[list[Fraction]]) -> bool:
    if not m:
        return True
    n = len(m)
    if any(len(row) != n for row in m):
        return False
    for row in m:
        if sorted(row) != [0] * (n - 1) + [1]:
            return False
    return all(sum(m[i][j] for i in range(n)) == 1 for j in range(n))


def suite_duality(b: Bounds) -> Iterator[Case]:
    for r in range(1, b.r + 1):
        for k in range(0, min(b.k, r) + 1):
            ring = GrassmannRing(k, r)
            ok = True
            for deg in range(ring.top_degree + 1):
                left = ring.partitions(deg)
                right = ring.partitions(ring.top_degree - deg)
                mat = [[duality_pair(ring.sigma(a), ring.sigma(c)) for c in right] for a in left]
                ok &= is_permutation_matrix(mat)
                ok &= all(duality_pair(ring.sigma(a), ring.sigma(complement(a, ring.rows, ring.cols))) == 1 for a in left)
            yield Case(f"duality k={k} r={r}: pairing is a permutation matrix", ok)


# -- lambda --------------------------------------------------------------------------


def _basis_elements(ring: NonlinearRing) -> list[NonlinearElement]:
    out = []
    for deg in range(ring.top_degree + 1):
        for m in ring.standard_monomials(deg):
            out.append(NonlinearElement._normal(ring, {m: Fraction(1)}))
    return out


def _random_element(ring: NonlinearRing, rng: random.Random) -> NonlinearElement:
    terms = {}
    for deg in range(ring.top_degree + 1):
        for m in ring.standard_monomials(deg):
            if rng.random() < 0.5:
                terms[m] = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
    return NonlinearElement._normal(ring, terms)


def lambda_cases(k: int, r: int, d: int, n_random: int, seed: int) -> Iterator[Case]:
    ring = NonlinearRing(k, r, d)
    grass = ring.grass
    tag = f"k={k} r={r} d={d}"
    yield Case(f"lambda {tag}: lambda(1) = 1", lambda_map(ring.one()) == grass.one())

    basis = _basis_elements(ring)
    mult_ok = True
    pres_ok = True
    for i, a in enumerate(basis):
        for b in basis[i:]:
            prod = nl_multiply(a, b)
            if lambda_map(prod) != multiply(lambda_map(a), lambda_map(b)):
                mult_ok = False
            # presentation route: multiply monomials as polynomials, reduce mod scaled relations
            (ma, ca), = a.terms.items()
            (mb, cb), = b.terms.items()
            poly = GradedPolynomial(ring.profile, {smonomial_to_exps(tuple(sorted(ma + mb)), ring.ngens): ca * cb})
            if presentation_normal_form(ring, poly) != prod.terms:
                pres_ok = False
    yield Case(f"lambda {tag}: multiplicative on {len(basis)} basis elements", mult_ok)
    yield Case(f"lambda {tag}: transport normal form == presentation normal form", pres_ok)

    dims = presentation_dims(ring)
    target = poincare_dims(grass) + [0]
    yield Case(f"lambda {tag}: presentation dims {dims[:-1]} == Grassmannian dims", dims == target)

    rels = scaled_relations(k, r, d)
    images_vanish = all(
        rel.evaluate([grass.special(j) * Fraction(d) ** (k + j) for j in ring.profile], grass.one()).is_zero()
        for rel in rels
    )
    yield Case(f"lambda {tag}: {len(rels)} scaled relations vanish under s_j -> d^(k+j) sigma_j", images_vanish)

    rng = random.Random(seed * 1000 + 100 * k + 10 * r + d)
    round_trip = True
    for _ in range(n_random):
        x = _random_element(ring, rng)
        if lambda_inverse(lambda_map(x), ring) != x:
            round_trip = False
    yield Case(f"lambda {tag}: lambda_inverse o lambda = id on {n_random} random elements", round_trip)


def suite_lambda(b: Bounds) -> Iterator[Case]:
    for r in range(1, b.r + 1):
        for k in range(1, min(b.k, r) + 1):
            for d in range(1, b.d + 1):
                yield from lambda_cases(k, r, d, b.random_elements, b.seed)


def suite_scaling(b: Bounds) -> Iterator[Case]:
    for r in range(1, b.r + 1):
        for k in range(1, min(b.k, r) + 1):
            for d in range(1, b.d + 1):
                ring = NonlinearRing(k, r, d)
                grass = ring.grass
                gens = range(1, ring.ngens + 1)
                ok = all(lambda_map(ring.gen(j)) == grass.special(j) * d ** (k + j) for j in gens)
                ok_pairs = all(
                    lambda_map(ring.gen(a) * ring.gen(b_)) == multiply(grass.special(a), grass.special(b_)) * d ** (2 * k + a + b_)
                    for a in gens
                    for b_ in gens
                )
                yield Case(f"scaling k={k} r={r} d={d}: lambda(s_j) = d^(k+j) sigma_j", ok)
                yield Case(f"scaling k={k} r={r} d={d}: lambda(s_a s_b) = d^(2k+a+b) sigma_a sigma_b", ok_pairs)


def suite_basis(b: Bounds) -> Iterator[Case]:
    for r in range(1, b.r + 1):
        for d in range(1, b.d + 1):
            rep = verify_sigma_basis(r, d)
            yield Case(
                f"basis r={r} d={d}: {rep.count} products, rank {rep.rank}, dim {rep.ring_dimension}",
                rep.passed,
            )


# -- push-forward --------------------------------------------------------------------


def power_cases(b: Bounds) -> Iterator[Case]:
    for k in range(0, b.k + 1):
        for n in range(k, b.n + 1):
            ring = GrassmannRing(k, n)
            ok = all(
                pushforward(XiPolynomial.xi_power(ring, l)) == to_schubert(ring, ring.p_table.p(l - k))
                for l in range(k, n + 4)
            )
            below = all(pushforward(XiPolynomial.xi_power(ring, l)).is_zero() for l in range(k))
            yield Case(f"pushforward k={k} n={n}: pi_*(xi^l) = p_(l-k) for {k} <= l <= {n + 3}", ok and below)


def bilt_cases(b: Bounds) -> Iterator[Case]:
    for k in range(0, b.k + 1):
        for r in range(max(k, 1), b.r + 1):
            for d in range(1, b.d + 1):
                for alpha in range(b.alpha + 1):
                    ring = GrassmannRing(k, r + alpha + 2)
                    lhs = bilt_pushforward(ring, r, d, alpha)
                    rhs = bilt_expected(ring, r, d, alpha)
                    ok = lhs == rhs and not rhs.is_zero()
                    yield Case(f"pushforward-bilt k={k} r={r} d={d} alpha={alpha}", ok, "" if ok else f"{lhs} vs {rhs}")


def suite_pushforward(b: Bounds) -> Iterator[Case]:
    yield from power_cases(b)
    yield from bilt_cases(b)


# -- GIT -----------------------------------------------------------------------------


def suite_git(b: Bounds) -> Iterator[Case]:
    rng = random.Random(b.seed)
    k = 1
    config = git.ProbeConfig(samples=b.samples, basis_changes=b.basis_changes, seed=b.seed)
    for d in range(1, b.d + 1):
        tuples = [git.random_free_tuple(k, rng.randint(1, 3), d, rng) for _ in range(b.tuples)]
        for q in b.q:
            fails = 0
            probes = 0
            for m in tuples:
                rep = git.torus_stable(m, q, config)
                probes += rep.probes
                fails += len(rep.failures)
            yield Case(f"git k=1 d={d} q={q}: {len(tuples)} tuples, {probes} probes, seed {b.seed}", fails == 0)

    # sharpness of q > k+1: single-monomial tuple, d = 1, w = (-1, ..., -1)
    for kk in (1, 2):
        n = kk + 1
        m = git.MapTuple.from_terms(kk, kk, 1, [{tuple(int(i == j) for i in range(n)): 1} for j in range(n)])
        wit = git.proof_witness(m, (-1,) * n, kk + 1)
        yield Case(f"git sharpness k={kk}: q=k+1, w=-1 gives case-2 weight {wit.value}", wit.ok and wit.case == 2 and wit.value == 0)

    # coordinate basepoint: (S^2, ST) vanishes at e_1
    m = git.MapTuple.from_terms(1, 1, 2, [{(2, 0): 1}, {(1, 1): 1}])
    wit = git.proof_witness(m, (0, -1), 3)
    yield Case("git basepoint at e_1: proof witness fails at j=1", (not wit.ok) and wit.j == 1)


SUITES: dict[str, Callable[[Bounds], Iterator[Case]]] = {
    "series": suite_series,
    "relations": suite_relations,
    "dims": suite_dims,
    "duality": suite_duality,
    "lambda": suite_lambda,
    "scaling": suite_scaling,
    "basis": suite_basis,
    "pushforward": suite_pushforward,
    "git": suite_git,
}


def run_suite(name: str, bounds: Bounds | None = None) -> list[Case]:
    return list(SUITES[name](bounds or Bounds()))
