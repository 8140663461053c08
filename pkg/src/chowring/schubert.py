"""Schubert calculus on the Grassmannian G(P^k, P^r).

The Chow ring has a Q-basis of Schubert classes sigma_lam, one for every
partition lam inside the (k+1) x (r-k) box. Multiplication goes through the
Giambelli determinant of one factor followed by repeated Pieri steps on the
other. Classes escaping the box vanish and are dropped silently.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence, Union

from . import linalg
from .algebra import (
    GradedPolynomial,
    InverseChernSeries,
    ProfileError,
    format_rational,
    monomials_of_degree,
    parse_rational,
)

Partition = tuple[int, ...]
Scalar = Union[int, Fraction]


def as_partition(parts: Iterable[int]) -> Partition:
    """Validate and strip trailing zeros."""
    lam = tuple(int(p) for p in parts)
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    if any(p <= 0 for p in lam):
        raise ValueError(f"partition parts must be positive: {parts!r}")
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"partition must be weakly decreasing: {parts!r}")
    return lam


def fits_box(lam: Partition, rows: int, cols: int) -> bool:
    return len(lam) <= rows and (not lam or lam[0] <= cols)


def partitions_in_box(size: int, rows: int, cols: int) -> list[Partition]:
    """Partitions of ``size`` inside a rows x cols box, descending lex order."""
    out: list[Partition] = []

    def rec(remaining: int, max_part: int, slots: int, prefix: tuple) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        if slots == 0:
            return
        for part in range(min(max_part, remaining), 0, -1):
            if part * slots < remaining:
                break
            rec(remaining - part, part, slots - 1, prefix + (part,))

    if size >= 0:
        rec(size, cols, rows, ())
    return out


def complement(lam: Partition, rows: int, cols: int) -> Partition:
    padded = list(lam) + [0] * (rows - len(lam))
    return as_partition(cols - p for p in reversed(padded))


def _pieri_shapes(lam: Partition, j: int, rows: int, cols: int) -> list[Partition]:
    """All mu with mu/lam a horizontal j-strip inside the box."""
    padded = list(lam) + [0] * (rows - len(lam))
    out: list[Partition] = []

    def rec(i: int, remaining: int, prefix: list[int]) -> None:
        if i == rows:
            if remaining == 0:
                out.append(as_partition(prefix))
            return
        upper = cols if i == 0 else padded[i - 1]
        for add in range(min(remaining, upper - padded[i]), -1, -1):
            rec(i + 1, remaining - add, prefix + [padded[i] + add])

    rec(0, j, [])
    return sorted(out, key=_canonical_key)


def _canonical_key(lam: Partition) -> tuple:
    # descending lexicographic on padded part lists; trailing zeros don't matter
    return tuple(-p for p in lam) + (0,)


@dataclass(frozen=True)
class GrassmannRing:
    """Handle for Ch(k, r, 1), the Chow ring of G(P^k, P^r).

    Memo tables live on the handle; two handles with the same ``(k, r)``
    compare equal and their elements interoperate.
    """

    k: int
    r: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not (0 <= self.k <= self.r):
            raise ValueError(f"need 0 <= k <= r, got k={self.k}, r={self.r}")

    @property
    def rows(self) -> int:
        return self.k + 1

    @property
    def cols(self) -> int:
        return self.r - self.k

    @property
    def top_degree(self) -> int:
        return self.rows * self.cols

    @property
    def dimension(self) -> int:
        return comb(self.r + 1, self.k + 1)

    @property
    def box(self) -> Partition:
        return (self.cols,) * self.rows if self.cols else ()

    @property
    def special_profile(self) -> tuple[int, ...]:
        """Generator degrees of sigma_1, ..., sigma_{r-k}."""
        return tuple(range(1, self.cols + 1))

    @property
    def chern_profile(self) -> tuple[int, ...]:
        """Generator degrees of c_1(S), ..., c_{k+1}(S)."""
        return tuple(range(1, self.k + 2))

    def _memo(self, table: str, key, compute):
        with self._lock:
            t = self._cache.setdefault(table, {})
            if key not in t:
                t[key] = compute()
            return t[key]

    def partitions(self, degree: int) -> list[Partition]:
        return list(self._memo("parts", degree, lambda: partitions_in_box(degree, self.rows, self.cols)))

    def basis(self) -> list[Partition]:
        return [lam for d in range(self.top_degree + 1) for lam in self.partitions(d)]

    def contains(self, lam: Partition) -> bool:
        return fits_box(lam, self.rows, self.cols)

    # elements
    def zero(self) -> "SchubertElement":
        return SchubertElement(self, {})

    def one(self) -> "SchubertElement":
        return SchubertElement(self, {(): 1})

    def sigma(self, lam: Sequence[int], coeff: Scalar = 1) -> "SchubertElement":
        lam = as_partition(lam)
        if not self.contains(lam):
            return self.zero()
        return SchubertElement(self, {lam: coeff})

    def special(self, j: int) -> "SchubertElement":
        """sigma_j, with sigma_0 = 1 and zero outside 0..r-k."""
        if j == 0:
            return self.one()
        if j < 0 or j > self.cols:
            return self.zero()
        return self.sigma((j,))

    def pieri_terms(self, j: int, lam: Partition) -> tuple[Partition, ...]:
        return self._memo("pieri", (j, lam), lambda: tuple(_pieri_shapes(lam, j, self.rows, self.cols)))

    def apply_special(self, j: int, terms: Mapping[Partition, Fraction]) -> dict[Partition, Fraction]:
        out: dict[Partition, Fraction] = {}
        for lam, c in terms.items():
            for mu in self.pieri_terms(j, lam):
                out[mu] = out.get(mu, Fraction(0)) + c
        return {mu: c for mu, c in out.items() if c}

    def giambelli(self, lam: Partition) -> GradedPolynomial:
        return self._memo("giambelli", lam, lambda: _giambelli_det(lam, self.cols))

    def _basis_product(self, lam: Partition, mu: Partition) -> dict[Partition, Fraction]:
        def compute():
            out: dict[Partition, Fraction] = {}
            for exps, coeff in self.giambelli(mu).terms.items():
                cur: dict[Partition, Fraction] = {lam: Fraction(1)}
                for idx, e in enumerate(exps):
                    for _ in range(e):
                        cur = self.apply_special(idx + 1, cur)
                for nu, c in cur.items():
                    out[nu] = out.get(nu, Fraction(0)) + coeff * c
            return {nu: c for nu, c in out.items() if c}

        return self._memo("product", (lam, mu), compute)

    def special_monomial(self, exps: Sequence[int]) -> "SchubertElement":
        """sigma_1^e1 * sigma_2^e2 * ... by iterated Pieri."""
        exps = tuple(exps)

        def compute():
            cur: dict[Partition, Fraction] = {(): Fraction(1)}
            for idx, e in enumerate(exps):
                if e and idx + 1 > self.cols:
                    return self.zero()
                for _ in range(e):
                    cur = self.apply_special(idx + 1, cur)
            return SchubertElement(self, cur)

        return self._memo("specmono", exps, compute)

    def _chern_list(self, upto: int) -> list["SchubertElement"]:
        with self._lock:
            lst = self._cache.setdefault("chern", [self.one()])
            while len(lst) <= upto:
                i = len(lst)
                acc: dict[Partition, Fraction] = {}
                for m in range(1, min(i, self.cols) + 1):
                    for lam, c in self.apply_special(m, lst[i - m].terms).items():
                        acc[lam] = acc.get(lam, Fraction(0)) - c
                lst.append(SchubertElement(self, acc))
            return lst

    @property
    def p_table(self) -> InverseChernSeries:
        return self._memo("ptable", None, lambda: InverseChernSeries(self.k))

    def vector(self, x: "SchubertElement", degree: int) -> list[Fraction]:
        """Coordinates of the degree-``degree`` part of ``x`` in the partition basis."""
        return [x.coefficient(lam) for lam in self.partitions(degree)]


class SchubertElement:
    """Rational combination of Schubert classes in a fixed ring."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: GrassmannRing, terms: Mapping[Sequence[int], Scalar]):
        clean: dict[Partition, Fraction] = {}
        for lam, c in terms.items():
            lam = as_partition(lam)
            if not ring.contains(lam):
                continue
            v = clean.get(lam, Fraction(0)) + Fraction(c)
            if v:
                clean[lam] = v
            else:
                clean.pop(lam, None)
        self.ring = ring
        self._terms = clean
        self._hash = None

    @property
    def terms(self) -> dict[Partition, Fraction]:
        return dict(self._terms)

    def coefficient(self, lam: Sequence[int]) -> Fraction:
        return self._terms.get(as_partition(lam), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {sum(lam) for lam in self._terms}

    @property
    def degree(self) -> int | None:
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, degree: int) -> "SchubertElement":
        return SchubertElement(self.ring, {lam: c for lam, c in self._terms.items() if sum(lam) == degree})

    def sorted_terms(self) -> list[tuple[Partition, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: _canonical_key(t[0]))

    def _same_ring(self, other: "SchubertElement") -> None:
        if not isinstance(other, SchubertElement) or other.ring != self.ring:
            raise ProfileError("Schubert elements live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        if not isinstance(other, SchubertElement):
            return NotImplemented
        self._same_ring(other)
        out = dict(self._terms)
        for lam, c in other._terms.items():
            out[lam] = out.get(lam, Fraction(0)) + c
        return SchubertElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SchubertElement(self.ring, {lam: -c for lam, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SchubertElement(self.ring, {lam: c * other for lam, c in self._terms.items()})
        if not isinstance(other, SchubertElement):
            return NotImplemented
        return multiply(self, other)

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
        if not isinstance(other, SchubertElement):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.k, self.ring.r, frozenset(self._terms.items())))
        return self._hash

    def to_json(self) -> dict:
        return {
            "k": self.ring.k,
            "r": self.ring.r,
            "d": 1,
            "terms": [{"partition": list(lam), "coeff": format_rational(c)} for lam, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping, ring: GrassmannRing | None = None) -> "SchubertElement":
        if data.get("d", 1) != 1:
            raise ProfileError("Schubert elements carry d = 1")
        if ring is None:
            ring = GrassmannRing(int(data["k"]), int(data["r"]))
        elif (data.get("k", ring.k), data.get("r", ring.r)) != (ring.k, ring.r):
            raise ProfileError("serialized element belongs to another ring")
        terms: dict[Partition, Fraction] = {}
        for rec in data["terms"]:
            lam = as_partition(rec["partition"])
            if not ring.contains(lam):
                raise ValueError(f"partition {lam} does not fit the {ring.rows}x{ring.cols} box")
            terms[lam] = terms.get(lam, Fraction(0)) + parse_rational(rec["coeff"])
        return cls(ring, terms)

    def format(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for lam, c in self.sorted_terms():
            name = "sigma[" + ",".join(map(str, lam)) + "]" if lam else ""
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
        return f"SchubertElement(k={self.ring.k}, r={self.ring.r}: {self.format()})"


def _giambelli_det(lam: Partition, cols: int) -> GradedPolynomial:
    """det(sigma_{lam_i + j - i}) by cofactor expansion along rows."""
    profile = tuple(range(1, cols + 1))
    n = len(lam)

    def entry(i: int, j: int) -> GradedPolynomial:
        m = lam[i] + j - i
        if m == 0:
            return GradedPolynomial.constant(profile)
        if m < 0 or m > cols:
            return GradedPolynomial.zero(profile)
        return GradedPolynomial.generator(profile, m - 1)

    memo: dict[tuple[int, int], GradedPolynomial] = {}

    def minor(i: int, free_cols: int) -> GradedPolynomial:
        if i == n:
            return GradedPolynomial.constant(profile)
        key = (i, free_cols)
        if key in memo:
            return memo[key]
        acc = GradedPolynomial.zero(profile)
        sign = 1
        for j in range(n):
            if not free_cols >> j & 1:
                continue
            a = entry(i, j)
            if not a.is_zero():
                acc = acc + a * minor(i + 1, free_cols & ~(1 << j)) * sign
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


# -- operation surface -------------------------------------------------------


def enumerate_partitions(ring: GrassmannRing, degree: int) -> list[Partition]:
    if degree < 0 or degree > ring.top_degree:
        return []
    return ring.partitions(degree)


def pieri(ring: GrassmannRing, j: int, lam: Sequence[int]) -> SchubertElement:
    """sigma_j * sigma_lam as a sum over horizontal strips."""
    if not 1 <= j <= ring.cols:
        raise ValueError(f"Pieri index j={j} outside 1..{ring.cols}")
    lam = as_partition(lam)
    if not ring.contains(lam):
        raise ValueError(f"partition {lam} does not fit the box")
    return SchubertElement(ring, {mu: 1 for mu in ring.pieri_terms(j, lam)})


def giambelli(ring: GrassmannRing, lam: Sequence[int]) -> GradedPolynomial:
    """sigma_lam as a polynomial in sigma_1..sigma_{r-k} (special classes past r-k are 0)."""
    lam = as_partition(lam)
    if not ring.contains(lam):
        raise ValueError(f"partition {lam} does not fit the box")
    return ring.giambelli(lam)


def multiply(a: SchubertElement, b: SchubertElement) -> SchubertElement:
    a._same_ring(b)
    ring = a.ring
    out: dict[Partition, Fraction] = {}
    for mu, cb in b._terms.items():
        for lam, ca in a._terms.items():
            for nu, c in ring._basis_product(lam, mu).items():
                out[nu] = out.get(nu, Fraction(0)) + ca * cb * c
    return SchubertElement(ring, out)


def chern_S(ring: GrassmannRing, i: int) -> SchubertElement:
    """c_i(S) from c(S) c(Q) = 1 with c_j(Q) = sigma_j."""
    if not 0 <= i <= ring.k + 1:
        raise ValueError(f"Chern index {i} outside 0..{ring.k + 1}")
    return ring._chern_list(i)[i]


def to_schubert(ring: GrassmannRing, f: GradedPolynomial) -> SchubertElement:
    """Normal form of a homogeneous polynomial in c_1(S), ..., c_{k+1}(S)."""
    if f.generator_degrees != ring.chern_profile:
        raise ProfileError(f"expected generators of degrees {ring.chern_profile}")
    if not f.is_homogeneous():
        raise ValueError("to_schubert needs a homogeneous polynomial")
    images = ring._chern_list(ring.k + 1)[1:]
    return f.evaluate(images, ring.one())


def poincare_dims(ring: GrassmannRing) -> list[int]:
    return [len(ring.partitions(j)) for j in range(ring.top_degree + 1)]


def equivariant_point_dims(k: int, bound: int) -> list[int]:
    """Number of monomials in c_1..c_{k+1} in each degree 0..bound."""
    if bound < 0:
        return []
    counts = [1] + [0] * bound
    for part in range(1, k + 2):
        for j in range(part, bound + 1):
            counts[j] += counts[j - part]
    return counts


def duality_pair(a: SchubertElement, b: SchubertElement) -> Fraction:
    """Coefficient of the point class in a * b."""
    a._same_ring(b)
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    if not (a.is_homogeneous() and b.is_homogeneous()):
        raise ValueError("duality pairing needs homogeneous classes")
    if a.degree + b.degree != ring.top_degree:
        raise ValueError(
            f"degrees {a.degree} + {b.degree} are not complementary (top degree {ring.top_degree})"
        )
    return multiply(a, b).coefficient(ring.box)


def sigma_relations(ring: GrassmannRing, max_degree: int | None = None) -> list[GradedPolynomial]:
    """Minimal homogeneous generators of the kernel of Q[sigma_1..] -> Ch(k,r,1).

    Degree by degree, the kernel is compared with the part already generated
    by lower-degree relations; the new generators span the complement with
    zeros in the pivot columns of the generated part, in reduced echelon form,
    scaled to primitive integer content.
    """
    if max_degree is None:
        max_degree = ring.top_degree + 1
    profile = ring.special_profile
    if not profile:
        return []
    ideal: dict[int, list[GradedPolynomial]] = {}
    generators: list[GradedPolynomial] = []
    for deg in range(1, max_degree + 1):
        monos = monomials_of_degree(profile, deg)
        index = {m: i for i, m in enumerate(monos)}
        parts = ring.partitions(deg) if deg <= ring.top_degree else []
        images = [ring.special_monomial(m) for m in monos]
        matrix = [[img.coefficient(lam) for img in images] for lam in parts]
        kernel = linalg.nullspace(matrix, len(monos))

        spanning = []
        for j in range(1, len(profile) + 1):
            g = GradedPolynomial.generator(profile, j - 1)
            for h in ideal.get(deg - j, []):
                prod = g * h
                vec = [Fraction(0)] * len(monos)
                for e, c in prod.terms.items():
                    vec[index[e]] = c
                spanning.append(vec)
        generated, pivots = linalg.rref(spanning) if spanning else ([], [])
        leftover = [linalg.reduce_vector(v, generated, pivots) for v in kernel]
        fresh, _ = linalg.rref([v for v in leftover if any(v)]) if any(any(v) for v in leftover) else ([], [])
        new = [GradedPolynomial(profile, {monos[i]: c for i, c in enumerate(row) if c}).content_primitive() for row in fresh]
        generators.extend(new)
        ideal[deg] = [GradedPolynomial(profile, {monos[i]: c for i, c in enumerate(row) if c}) for row in generated] + new
    return generators
