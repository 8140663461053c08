"""Chow ring Ch(k, r, d) of the space of degree-d maps P^k -> P^r.

Ch(k, r, d) is generated by classes s_1, ..., s_{r-k} (s_j is the locus of
maps meeting a fixed codimension k+j linear space). The canonical
isomorphism ``lambda`` to the Grassmannian ring sends s_j to d^{k+j} sigma_j.

Two realizations are kept apart on purpose:

* transport: normal forms are defined by pulling Schubert-basis coordinates
  back through ``lambda`` (:func:`lambda_map`, :func:`lambda_inverse`);
* presentation: Q[s_1..s_{r-k}] modulo :func:`scaled_relations`, reduced
  with per-degree linear algebra (:func:`presentation_normal_form`).

Agreement of the two is what the test suite checks.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from . import linalg
from .algebra import GradedPolynomial, ProfileError, format_rational, monomials_of_degree, parse_rational
from .schubert import GrassmannRing, SchubertElement, poincare_dims, sigma_relations

SMonomial = tuple[int, ...]
Scalar = Union[int, Fraction]


class ConsistencyError(RuntimeError):
    """The lambda-image basis is rank deficient; the ring construction is broken."""


def as_smonomial(indices: Iterable[int]) -> SMonomial:
    return tuple(sorted(int(j) for j in indices))


def smonomial_key(m: SMonomial) -> tuple:
    """Canonical order: degree, then fewer factors, then larger indices first."""
    return (sum(m), len(m), tuple(-j for j in reversed(m)))


def exps_to_smonomial(exps: Sequence[int]) -> SMonomial:
    return tuple(j + 1 for j, e in enumerate(exps) for _ in range(e))


def smonomial_to_exps(m: SMonomial, ngens: int) -> tuple[int, ...]:
    exps = [0] * ngens
    for j in m:
        exps[j - 1] += 1
    return tuple(exps)


@dataclass(frozen=True)
class NonlinearRing:
    """Handle for Ch(k, r, d); holds its Grassmannian target and memo tables."""

    k: int
    r: int
    d: int
    grass: GrassmannRing = field(init=False, compare=False, repr=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be at least 1")
        object.__setattr__(self, "grass", GrassmannRing(self.k, self.r))

    @property
    def ngens(self) -> int:
        return self.r - self.k

    @property
    def profile(self) -> tuple[int, ...]:
        return tuple(range(1, self.ngens + 1))

    @property
    def top_degree(self) -> int:
        return self.grass.top_degree

    def _memo(self, table: str, key, compute):
        with self._lock:
            t = self._cache.setdefault(table, {})
            if key not in t:
                t[key] = compute()
            return t[key]

    def monomials(self, degree: int) -> list[SMonomial]:
        """All s-monomials of a degree, in canonical order."""
        return self._memo(
            "monos",
            degree,
            lambda: sorted((exps_to_smonomial(e) for e in monomials_of_degree(self.profile, degree)), key=smonomial_key),
        )

    def scale_factor(self, m: SMonomial) -> int:
        return self.d ** sum(self.k + j for j in m)

    def monomial_image(self, m: SMonomial) -> SchubertElement:
        """lambda(s_m) = d^{sum(k+j)} * prod sigma_j."""
        return self._memo(
            "image",
            m,
            lambda: self.grass.special_monomial(smonomial_to_exps(m, self.ngens)) * self.scale_factor(m),
        )

    def _degree_data(self, degree: int):
        """(standard monomials, inverse of their image matrix) for one degree."""

        def compute():
            parts = self.grass.partitions(degree) if 0 <= degree <= self.top_degree else []
            chosen: list[SMonomial] = []
            rows: list[list[Fraction]] = []
            for m in self.monomials(degree):
                if len(chosen) == len(parts):
                    break
                vec = self.grass.vector(self.monomial_image(m), degree)
                if linalg.rank(rows + [vec]) > len(rows):
                    chosen.append(m)
                    rows.append(vec)
            if len(chosen) != len(parts):
                raise ConsistencyError(
                    f"degree {degree}: s-monomial images span {len(chosen)} of {len(parts)} dimensions"
                )
            # columns of the image matrix are the chosen monomials
            inv = linalg.inverse(linalg.transpose(rows)) if rows else []
            return chosen, inv

        return self._memo("degree", degree, compute)

    def standard_monomials(self, degree: int) -> list[SMonomial]:
        return list(self._degree_data(degree)[0])

    def one(self) -> "NonlinearElement":
        return NonlinearElement._normal(self, {(): Fraction(1)})

    def zero(self) -> "NonlinearElement":
        return NonlinearElement._normal(self, {})

    def gen(self, j: int) -> "NonlinearElement":
        if not 1 <= j <= self.ngens:
            raise ValueError(f"generator s_{j} outside 1..{self.ngens}")
        return self.element({(j,): 1})

    def element(self, terms: Mapping[Iterable[int], Scalar]) -> "NonlinearElement":
        return NonlinearElement(self, terms)

    def from_polynomial(self, f: GradedPolynomial) -> "NonlinearElement":
        if f.generator_degrees != self.profile:
            raise ProfileError("polynomial is not in s_1..s_{r-k}")
        return self.element({exps_to_smonomial(e): c for e, c in f.terms.items()})


class NonlinearElement:
    """Element of Ch(k, r, d), stored in the standard-monomial normal form."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: NonlinearRing, terms: Mapping[Iterable[int], Scalar]):
        raw: dict[SMonomial, Fraction] = {}
        for m, c in terms.items():
            m = as_smonomial(m)
            if any(not 1 <= j <= ring.ngens for j in m):
                raise ValueError(f"s-monomial {m} uses a generator outside s_1..s_{ring.ngens}")
            raw[m] = raw.get(m, Fraction(0)) + Fraction(c)
        normal = lambda_inverse(_raw_image(ring, raw), ring)
        self.ring = ring
        self._terms = normal._terms
        self._hash = None

    @classmethod
    def _normal(cls, ring: NonlinearRing, terms: dict[SMonomial, Fraction]) -> "NonlinearElement":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = {m: c for m, c in terms.items() if c}
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict[SMonomial, Fraction]:
        return dict(self._terms)

    def coefficient(self, m: Iterable[int]) -> Fraction:
        return self._terms.get(as_smonomial(m), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list[tuple[SMonomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: smonomial_key(t[0]))

    def _same_ring(self, other) -> None:
        if not isinstance(other, NonlinearElement) or other.ring != self.ring:
            raise ProfileError("nonlinear elements live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        if not isinstance(other, NonlinearElement):
            return NotImplemented
        self._same_ring(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return NonlinearElement._normal(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return NonlinearElement._normal(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NonlinearElement._normal(self.ring, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, NonlinearElement):
            return NotImplemented
        return nl_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        if not isinstance(other, NonlinearElement):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.k, self.ring.r, self.ring.d, frozenset(self._terms.items())))
        return self._hash

    def to_json(self) -> dict:
        return {
            "k": self.ring.k,
            "r": self.ring.r,
            "d": self.ring.d,
            "terms": [{"smonomial": list(m), "coeff": format_rational(c)} for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping, ring: NonlinearRing | None = None) -> "NonlinearElement":
        key = (int(data["k"]), int(data["r"]), int(data.get("d", 1)))
        if ring is None:
            ring = NonlinearRing(*key)
        elif key != (ring.k, ring.r, ring.d):
            raise ProfileError("serialized element belongs to another ring")
        terms: dict[SMonomial, Fraction] = {}
        for rec in data["terms"]:
            m = as_smonomial(rec["smonomial"])
            terms[m] = terms.get(m, Fraction(0)) + parse_rational(rec["coeff"])
        return cls(ring, terms)

    def format(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            exps = smonomial_to_exps(m, self.ring.ngens)
            name = "*".join(f"s{j + 1}" if e == 1 else f"s{j + 1}^{e}" for j, e in enumerate(exps) if e)
            if not name:
                body = str(abs(c))
            elif abs(c) == 1:
                body = name
            else:
                body = f"{abs(c)}*{name}"
            pieces.append(("-" if c < 0 else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"NonlinearElement(k={self.ring.k}, r={self.ring.r}, d={self.ring.d}: {self.format()})"


def _raw_image(ring: NonlinearRing, terms: Mapping[SMonomial, Fraction]) -> SchubertElement:
    out = ring.grass.zero()
    for m, c in terms.items():
        if c:
            out = out + ring.monomial_image(m) * c
    return out


def lambda_map(x: NonlinearElement) -> SchubertElement:
    return _raw_image(x.ring, x._terms)


def lambda_inverse(y: SchubertElement, ring: NonlinearRing) -> NonlinearElement:
    """The unique x in normal form with lambda(x) = y."""
    if y.ring != ring.grass:
        raise ProfileError("Schubert element is not in the target Grassmannian")
    out: dict[SMonomial, Fraction] = {}
    for deg in sorted(y.degrees()):
        standard, inv = ring._degree_data(deg)
        coords = linalg.mat_vec(inv, ring.grass.vector(y, deg))
        for m, c in zip(standard, coords):
            if c:
                out[m] = c
    return NonlinearElement._normal(ring, out)


def nl_multiply(a: NonlinearElement, b: NonlinearElement) -> NonlinearElement:
    a._same_ring(b)
    return lambda_inverse(lambda_map(a) * lambda_map(b), a.ring)


def scaled_relations(k: int, r: int, d: int) -> list[GradedPolynomial]:
    """Grassmannian relations rewritten in s_j = d^{k+j} sigma_j, primitive."""
    if d < 1:
        raise ValueError("d must be at least 1")
    grass = GrassmannRing(k, r)
    out = []
    for rel in sigma_relations(grass):
        terms = {}
        for exps, c in rel.terms.items():
            weight = sum(e * (k + j + 1) for j, e in enumerate(exps))
            terms[exps] = c / Fraction(d) ** weight
        out.append(GradedPolynomial(rel.generator_degrees, terms).content_primitive())
    return out


def _ideal_basis(ring: NonlinearRing, relations: Sequence[GradedPolynomial], degree: int):
    """rref of the degree-``degree`` part of the relation ideal, columns = ring.monomials(degree)."""
    monos = ring.monomials(degree)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for rel in relations:
        rd = rel.degree
        if rd is None or rd > degree:
            continue
        for mult in ring.monomials(degree - rd):
            vec = [Fraction(0)] * len(monos)
            for exps, c in rel.terms.items():
                vec[index[as_smonomial(mult + exps_to_smonomial(exps))]] += c
            rows.append(vec)
    return linalg.rref(rows) if rows else ([], [])


def presentation_dims(ring: NonlinearRing, max_degree: int | None = None) -> list[int]:
    """dim of Q[s]/(scaled relations) in degrees 0..max_degree."""
    if max_degree is None:
        max_degree = ring.top_degree + 1
    rels = ring._memo("rels", None, lambda: scaled_relations(ring.k, ring.r, ring.d))
    dims = []
    for deg in range(max_degree + 1):
        reduced, _ = _ideal_basis(ring, rels, deg)
        dims.append(len(ring.monomials(deg)) - len(reduced))
    return dims


def presentation_normal_form(ring: NonlinearRing, f: GradedPolynomial) -> dict[SMonomial, Fraction]:
    """Reduce ``f`` modulo the scaled relations onto the standard monomials.

    Uses only the relation ideal, never ``lambda``. Raises ConsistencyError
    when the standard monomials are not a complement of the ideal.
    """
    if f.generator_degrees != ring.profile:
        raise ProfileError("polynomial is not in s_1..s_{r-k}")
    rels = ring._memo("rels", None, lambda: scaled_relations(ring.k, ring.r, ring.d))
    out: dict[SMonomial, Fraction] = {}
    by_degree: dict[int, dict[SMonomial, Fraction]] = {}
    for exps, c in f.terms.items():
        m = exps_to_smonomial(exps)
        by_degree.setdefault(sum(m), {})[m] = c
    for deg, part in by_degree.items():
        monos = ring.monomials(deg)
        standard = ring.standard_monomials(deg) if deg <= ring.top_degree else []
        std_set = set(standard)
        # nonstandard columns first so the ideal's pivots land on them
        order = [m for m in monos if m not in std_set] + [m for m in monos if m in std_set]
        perm = [monos.index(m) for m in order]
        reduced, pivots = _ideal_basis(ring, rels, deg)
        reduced = [[row[i] for i in perm] for row in reduced]
        reduced, pivots = linalg.rref(reduced) if reduced else ([], [])
        n_nonstd = len(monos) - len(standard)
        if pivots != list(range(n_nonstd)):
            raise ConsistencyError(f"degree {deg}: standard monomials are not a complement of the relation ideal")
        vec = [part.get(m, Fraction(0)) for m in order]
        vec = linalg.reduce_vector(vec, reduced, pivots)
        for m, c in zip(order, vec):
            if c:
                out[m] = c
    return out


@dataclass
class BasisReport:
    r: int
    d: int
    elements: list[SMonomial]
    count: int
    expected_count: int
    rank: int
    ring_dimension: int

    @property
    def independent(self) -> bool:
        return self.rank == self.count

    @property
    def passed(self) -> bool:
        return self.independent and self.count == self.expected_count == self.ring_dimension


def verify_sigma_basis(r: int, d: int) -> BasisReport:
    """Check that s_a * s_b (0 <= a <= b <= r-1, s_0 = 1) is a basis of Ch(1, r, d)."""
    ring = NonlinearRing(1, r, d)
    elements = [as_smonomial(j for j in (a, b) if j) for a in range(r) for b in range(a, r)]
    basis = ring.grass.basis()
    rows = []
    for m in elements:
        img = ring.monomial_image(m)
        rows.append([img.coefficient(lam) for lam in basis])
    return BasisReport(
        r=r,
        d=d,
        elements=elements,
        count=len(elements),
        expected_count=r * (r + 1) // 2,
        rank=linalg.rank(rows),
        ring_dimension=sum(poincare_dims(ring.grass)),
    )
