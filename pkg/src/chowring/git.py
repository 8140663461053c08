"""Torus-weight arithmetic for the GIT construction of the space of maps.

A map P^k -> P^r of degree d is an (r+1)-tuple of degree-d forms in the dual
coordinates v_0*, ..., v_k*. It is embedded in P(Det (x) (1 + Sym^q Z + Z))
by f -> [1 (x) (1 + f^q + f)]. For the torus with weight w_j on v_j, the dual
v_j* has weight -w_j and Det has weight sum(w). A nonzero diagonal
coordinate therefore has weight ``a . w`` for an integer vector ``a``; we
call ``a`` a weight functional.

Stability evidence here means: for each probed w some nonzero coordinate
has positive weight. Only the standard torus and sampled basis changes are
probed, so a passing report is "torus-probed", not a proof.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .algebra import GradedPolynomial, format_rational, monomials_of_degree, parse_rational

Functional = tuple[int, ...]

DEFAULT_SEED = 20260101
FUNCTIONAL_BUDGET = 100_000


class PreconditionError(ValueError):
    """Inputs violate an operation's stated precondition."""


@dataclass(frozen=True)
class MapTuple:
    k: int
    r: int
    d: int
    forms: tuple[GradedPolynomial, ...]

    def __post_init__(self):
        if self.k < 0 or self.r < 0 or self.d < 1:
            raise ValueError("need k >= 0, r >= 0, d >= 1")
        forms = tuple(self.forms)
        if len(forms) != self.r + 1:
            raise ValueError(f"expected {self.r + 1} forms, got {len(forms)}")
        profile = (1,) * (self.k + 1)
        for f in forms:
            if f.generator_degrees != profile:
                raise ValueError(f"forms must be polynomials in {self.k + 1} variables")
            if not f.is_zero() and f.degree != self.d:
                raise ValueError(f"form {f.format()} is not homogeneous of degree {self.d}")
        if all(f.is_zero() for f in forms):
            raise ValueError("all forms are zero")
        object.__setattr__(self, "forms", forms)

    @classmethod
    def from_terms(cls, k: int, r: int, d: int, forms: Sequence[Mapping[Sequence[int], object]]) -> "MapTuple":
        profile = (1,) * (k + 1)
        return cls(k, r, d, tuple(GradedPolynomial(profile, f) for f in forms))

    def to_json(self) -> dict:
        return {"k": self.k, "r": self.r, "d": self.d, "forms": [f.to_json() for f in self.forms]}

    @classmethod
    def from_json(cls, data: Mapping) -> "MapTuple":
        k, r, d = int(data["k"]), int(data["r"]), int(data["d"])
        profile = (1,) * (k + 1)
        forms = []
        for recs in data["forms"]:
            forms.append(
                GradedPolynomial(profile, {tuple(rec["exponents"]): parse_rational(rec["coeff"]) for rec in recs})
            )
        return cls(k, r, d, tuple(forms))

    def exponents(self) -> set[tuple[int, ...]]:
        """Exponent vectors occurring with nonzero coefficient in some form."""
        return {e for f in self.forms for e in f.terms}

    def pure_power_coefficient(self, j: int) -> list[Fraction]:
        """Coefficients of v_j*^d in f_0, ..., f_r (i.e. the values f_l(e_j))."""
        e = tuple(self.d if i == j else 0 for i in range(self.k + 1))
        return [f.coefficient(e) for f in self.forms]

    def evaluate(self, point: Sequence) -> list[Fraction]:
        point = [Fraction(x) for x in point]
        return [f.evaluate(point, Fraction(1)) for f in self.forms]

    def scaled(self, c) -> "MapTuple":
        return MapTuple(self.k, self.r, self.d, tuple(f.scale(c) for f in self.forms))

    def change_basis(self, g: Sequence[Sequence[int]]) -> "MapTuple":
        """Forms f(g x): coordinate x_i becomes sum_j g[i][j] x_j."""
        profile = (1,) * (self.k + 1)
        images = [
            GradedPolynomial(profile, {tuple(int(a == j) for a in range(self.k + 1)): g[i][j] for j in range(self.k + 1)})
            for i in range(self.k + 1)
        ]
        one = GradedPolynomial.constant(profile)
        return MapTuple(self.k, self.r, self.d, tuple(f.evaluate(images, one) for f in self.forms))


# -- basepoints ------------------------------------------------------------------


@dataclass(frozen=True)
class BasepointResult:
    status: str  # "free" | "basepoint_found" | "undetermined"
    witness: object = None

    @property
    def free(self) -> bool:
        return self.status == "free"


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b):
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a = _trim(a[:-1])
    return a


def univariate_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd over Q, coefficients low to high; [] is the zero polynomial."""
    a, b = _trim([Fraction(x) for x in a]), _trim([Fraction(x) for x in b])
    while b:
        a, b = b, _poly_rem(a, b)
    if not a:
        return []
    return [c / a[-1] for c in a]


def basepoint_free(m: MapTuple, samples: int = 64, seed: int = DEFAULT_SEED) -> BasepointResult:
    """Decide whether the forms have a common zero on P^k.

    Exact for k <= 1. For k >= 2 only coordinate points and ``samples``
    pseudorandom integer points are tried, so the answer is one-sided.
    """
    if all(f.is_zero() for f in m.forms):
        raise ValueError("zero tuple")
    d = m.d
    if m.k == 0:
        return BasepointResult("free")
    if m.k == 1:
        # common zero at S = 0 or T = 0, i.e. every form divisible by T or by S
        if not any(m.pure_power_coefficient(1)):
            return BasepointResult("basepoint_found", (0, 1))
        if not any(m.pure_power_coefficient(0)):
            return BasepointResult("basepoint_found", (1, 0))
        g: list[Fraction] = []
        for f in m.forms:
            coeffs = [f.coefficient((a, d - a)) for a in range(d + 1)]  # f(s, 1), low to high
            g = univariate_gcd(g, coeffs)
        if len(g) <= 1:
            return BasepointResult("free")
        if len(g) == 2:
            return BasepointResult("basepoint_found", (-g[0], Fraction(1)))
        return BasepointResult("basepoint_found", {"common_factor_in_s": [format_rational(c) for c in g]})
    for j in range(m.k + 1):
        if not any(m.pure_power_coefficient(j)):
            return BasepointResult("basepoint_found", tuple(int(i == j) for i in range(m.k + 1)))
    rng = random.Random(seed)
    for _ in range(samples):
        point = [rng.randint(-5, 5) for _ in range(m.k + 1)]
        if any(point) and not any(m.evaluate(point)):
            return BasepointResult("basepoint_found", tuple(point))
    return BasepointResult("undetermined")


# -- embedded state ------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddedState:
    """Weight functionals of the nonzero diagonal coordinates of the embedded point."""

    q: int
    det: Functional
    z: frozenset
    sym: frozenset

    @property
    def functionals(self) -> frozenset:
        return frozenset({self.det}) | self.z | self.sym


def embed_state(m: MapTuple, q: int, budget: int = FUNCTIONAL_BUDGET) -> EmbeddedState:
    if q < 1:
        raise ValueError("q must be at least 1")
    n = m.k + 1
    ones = (1,) * n
    exps = sorted(m.exponents())
    z = frozenset(tuple(1 - a for a in e) for e in exps)
    sums = {(0,) * n}
    for _ in range(q):
        sums = {tuple(a + b for a, b in zip(s, e)) for s in sums for e in exps}
        if len(sums) > budget:
            raise ValueError(f"Sym^{q} functional count exceeds budget {budget}")
    sym = frozenset(tuple(1 - a for a in s) for s in sums)
    return EmbeddedState(q=q, det=ones, z=z, sym=sym)


def evaluate_functional(a: Functional, w: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, w))


@dataclass(frozen=True)
class Verdict:
    positive: bool
    functional: Functional
    value: int


def hm_verdict(state: EmbeddedState, w: Sequence[int]) -> Verdict:
    """Best functional at w: a positive one if any exists, else the maximum."""
    best = max(sorted(state.functionals), key=lambda a: evaluate_functional(a, w))
    value = evaluate_functional(best, w)
    return Verdict(value > 0, best, value)


@dataclass(frozen=True)
class Witness:
    ok: bool
    case: int
    j: int | None
    functional: Functional | None
    value: int | None
    warning: str | None = None


def proof_witness(m: MapTuple, w: Sequence[int], q: int) -> Witness:
    """Positive-weight coordinate chosen the way the stability argument does.

    If sum(w) > 0 the Det (x) 1 coordinate works. Otherwise take j with the
    most negative w_j; the coordinate (v_j*^d)^q has weight
    sum(w) - q d w_j, provided some form has a nonzero v_j*^d coefficient.
    """
    w = [int(x) for x in w]
    if len(w) != m.k + 1 or not any(w):
        raise ValueError("weight vector must have k+1 entries, not all zero")
    warning = None if q > m.k + 1 else f"q={q} <= k+1={m.k + 1}: witness value may be <= 0"
    n = m.k + 1
    total = sum(w)
    if total > 0:
        return Witness(True, 1, None, (1,) * n, total, warning)
    j = min(range(n), key=lambda i: (w[i], i))
    if not any(m.pure_power_coefficient(j)):
        return Witness(False, 2, j, None, None, warning)
    functional = tuple(1 - (q * m.d if i == j else 0) for i in range(n))
    return Witness(True, 2, j, functional, total - q * m.d * w[j], warning)


# -- probing ---------------------------------------------------------------------


@dataclass
class ProbeConfig:
    samples: int = 20
    basis_changes: int = 10
    seed: int = DEFAULT_SEED
    weight_bound: int = 10
    matrix_bound: int = 3
    budget: int = FUNCTIONAL_BUDGET


@dataclass
class StabilityReport:
    verdict: str
    probes: int
    seed: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "torus-probed stable"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "probes": self.probes, "seed": self.seed, "failures": self.failures}


def extremal_fan(n: int) -> list[tuple[int, ...]]:
    """±e_j for every j, then every ±1 sign pattern."""
    out = []
    for j in range(n):
        for s in (1, -1):
            out.append(tuple(s if i == j else 0 for i in range(n)))
    out.extend(itertools.product((1, -1), repeat=n))
    return out


def random_invertible(n: int, rng: random.Random, bound: int = 3) -> list[list[int]]:
    while True:
        g = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if linalg.rank(g) == n:
            return g


def random_weight(n: int, rng: random.Random, bound: int = 10) -> tuple[int, ...]:
    while True:
        w = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(w):
            return w


def torus_stable(m: MapTuple, q: int, config: ProbeConfig | None = None) -> StabilityReport:
    """Probe the stability argument on a fan of weights and sampled bases."""
    config = config or ProbeConfig()
    if q <= m.k + 1:
        raise PreconditionError(f"need q > k+1 = {m.k + 1}, got {q}")
    bp = basepoint_free(m)
    if bp.status == "basepoint_found":
        raise PreconditionError(f"tuple has a basepoint at {bp.witness}")
    n = m.k + 1
    rng = random.Random(config.seed)
    weights = extremal_fan(n) + [random_weight(n, rng, config.weight_bound) for _ in range(config.samples)]
    bases = [None] + [random_invertible(n, rng, config.matrix_bound) for _ in range(config.basis_changes)]
    failures = []
    probes = 0
    for g in bases:
        tup = m if g is None else m.change_basis(g)
        state = embed_state(tup, q, config.budget)
        for w in weights:
            probes += 1
            wit = proof_witness(tup, w, q)
            hm = hm_verdict(state, w)
            if not (wit.ok and wit.value > 0 and hm.positive):
                failures.append({"w": list(w), "basis": g, "witness_ok": wit.ok, "hm_max": hm.value})
    verdict = "torus-probed stable" if not failures else "unstable probe found"
    return StabilityReport(verdict, probes, config.seed, failures)


def random_map_tuple(k: int, r: int, d: int, rng: random.Random, coeff_bound: int = 3, density: float = 0.6) -> MapTuple:
    """Tuple of random integer forms (not necessarily basepoint free)."""
    monos = monomials_of_degree((1,) * (k + 1), d)
    while True:
        forms = []
        for _ in range(r + 1):
            terms = {e: rng.randint(-coeff_bound, coeff_bound) for e in monos if rng.random() < density}
            forms.append(terms)
        try:
            return MapTuple.from_terms(k, r, d, forms)
        except ValueError:
            continue


def random_free_tuple(k: int, r: int, d: int, rng: random.Random, **kwargs) -> MapTuple:
    """Random tuple that is basepoint free (exactly checked for k = 1)."""
    if k > 1:
        raise ValueError("exact basepoint check only for k <= 1; build k >= 2 tuples explicitly")
    while True:
        m = random_map_tuple(k, r, d, rng, **kwargs)
        if basepoint_free(m).free:
            return m
