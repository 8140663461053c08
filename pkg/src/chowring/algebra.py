"""Exact graded polynomials and truncated power series over Q.

Rationals are :class:`fractions.Fraction`; they are always normalized with a
positive denominator. A :class:`GradedPolynomial` lives in a polynomial ring
whose generators carry positive integer degrees, e.g. the Chern classes
``c_1, ..., c_{k+1}`` with ``deg c_i = i``.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence, Union

__all__ = [
    "ProfileError",
    "NonInvertibleError",
    "format_rational",
    "parse_rational",
    "GradedPolynomial",
    "poly_arith",
    "TruncatedSeries",
    "series_inverse",
    "chern_series",
    "InverseChernSeries",
    "p_class",
    "monomials_of_degree",
]

Exponents = tuple[int, ...]
Scalar = Union[int, Fraction]


class ProfileError(ValueError):
    """Operands live in different rings (generator profiles or ring handles)."""


class NonInvertibleError(ValueError):
    """A power series with constant term other than 1 was inverted."""


_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


def format_rational(x: Scalar) -> str:
    """Serialize as ``"num/den"``, dropping the denominator when it is 1."""
    return str(Fraction(x))


def parse_rational(text: Union[str, int]) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text.replace(" ", ""))


class GradedPolynomial:
    """Polynomial with rational coefficients in weighted-degree generators.

    Terms are kept in a dict from dense exponent tuples to nonzero
    coefficients. Instances are immutable; arithmetic returns new objects.
    """

    __slots__ = ("generator_degrees", "_terms", "_hash")

    def __init__(self, generator_degrees: Sequence[int], terms: Mapping[Sequence[int], Scalar] | None = None):
        degs = tuple(int(g) for g in generator_degrees)
        if any(g <= 0 for g in degs):
            raise ValueError("generator degrees must be positive")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(degs):
                raise ProfileError(f"exponent vector {exps} does not match {len(degs)} generators")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = clean.get(exps, Fraction(0)) + Fraction(coeff)
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.generator_degrees = degs
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, generator_degrees: Sequence[int]) -> "GradedPolynomial":
        return cls(generator_degrees)

    @classmethod
    def constant(cls, generator_degrees: Sequence[int], value: Scalar = 1) -> "GradedPolynomial":
        return cls(generator_degrees, {(0,) * len(generator_degrees): value})

    @classmethod
    def generator(cls, generator_degrees: Sequence[int], index: int) -> "GradedPolynomial":
        """The ``index``-th generator (0-based)."""
        exps = [0] * len(generator_degrees)
        exps[index] = 1
        return cls(generator_degrees, {tuple(exps): 1})

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.generator_degrees)

    def is_zero(self) -> bool:
        return not self._terms

    def term_degree(self, exps: Sequence[int]) -> int:
        return sum(e * g for e, g in zip(exps, self.generator_degrees))

    def degrees(self) -> set[int]:
        return {self.term_degree(e) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Graded degree of a homogeneous nonzero polynomial, else None."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    # arithmetic
    def _check(self, other: "GradedPolynomial") -> None:
        if other.generator_degrees != self.generator_degrees:
            raise ProfileError(
                f"generator profiles differ: {self.generator_degrees} vs {other.generator_degrees}"
            )

    def _coerce(self, other) -> "GradedPolynomial":
        if isinstance(other, GradedPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return GradedPolynomial.constant(self.generator_degrees, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return GradedPolynomial(self.generator_degrees, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial(self.generator_degrees, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: Scalar) -> "GradedPolynomial":
        factor = Fraction(factor)
        if not factor:
            return GradedPolynomial.zero(self.generator_degrees)
        return GradedPolynomial(self.generator_degrees, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        self._check(other)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return GradedPolynomial(self.generator_degrees, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = GradedPolynomial.constant(self.generator_degrees)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPolynomial.constant(self.generator_degrees, other)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.generator_degrees == other.generator_degrees and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.generator_degrees, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, images: Sequence, one, scale: Callable | None = None):
        """Substitute ``images[i]`` for generator ``i`` in any ring.

        ``one`` is the unit of the target ring; ``scale(x, c)`` multiplies a
        target element by a rational (defaults to ``c * x``).
        """
        scale = scale or (lambda x, c: c * x)
        total = None
        powers: dict[tuple[int, int], object] = {}

        def power(i: int, e: int):
            if (i, e) not in powers:
                powers[(i, e)] = one if e == 0 else power(i, e - 1) * images[i]
            return powers[(i, e)]

        for exps, coeff in self.sorted_terms():
            mono = one
            for i, e in enumerate(exps):
                if e:
                    mono = mono * power(i, e)
            term = scale(mono, coeff)
            total = term if total is None else total + term
        return scale(one, Fraction(0)) if total is None else total

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms by descending degree, then descending lexicographic exponents."""
        return sorted(self._terms.items(), key=lambda t: (-self.term_degree(t[0]), [-e for e in t[0]]))

    def content_primitive(self) -> "GradedPolynomial":
        """Scale to coprime integer coefficients with positive leading term."""
        if self.is_zero():
            return self
        from math import gcd, lcm

        items = self.sorted_terms()
        den = 1
        for _, c in items:
            den = lcm(den, c.denominator)
        nums = [int(c * den) for _, c in items]
        g = 0
        for n in nums:
            g = gcd(g, n)
        sign = -1 if nums[0] < 0 else 1
        return self.scale(Fraction(sign * den, g))

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": format_rational(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, generator_degrees: Sequence[int], records: Iterable[Mapping]) -> "GradedPolynomial":
        return cls(generator_degrees, {tuple(r["exponents"]): parse_rational(r["coeff"]) for r in records})

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"g{i + 1}" for i in range(self.nvars)]
        if self.is_zero():
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"GradedPolynomial({self.format()})"


def poly_arith(op: str, a: GradedPolynomial, b) -> GradedPolynomial:
    """Dispatch ``add``/``mul``/``scale`` on graded polynomials."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in ``t`` modulo ``t^(order+1)`` with graded coefficients.

    The coefficient of ``t^j`` must be homogeneous of graded degree ``j``.
    """

    order: int
    coefficients: tuple[GradedPolynomial, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        coeffs = tuple(self.coefficients)
        if not coeffs:
            raise ValueError("series needs at least a constant coefficient")
        profile = coeffs[0].generator_degrees
        if len(coeffs) < self.order + 1:
            coeffs = coeffs + (GradedPolynomial.zero(profile),) * (self.order + 1 - len(coeffs))
        coeffs = coeffs[: self.order + 1]
        for j, c in enumerate(coeffs):
            if c.generator_degrees != profile:
                raise ProfileError("series coefficients use different generator profiles")
            if not c.is_zero() and c.degree != j:
                raise ValueError(f"coefficient of t^{j} is not homogeneous of degree {j}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def generator_degrees(self) -> tuple[int, ...]:
        return self.coefficients[0].generator_degrees

    def __getitem__(self, j: int) -> GradedPolynomial:
        return self.coefficients[j]

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out = []
        for j in range(n + 1):
            acc = GradedPolynomial.zero(self.generator_degrees)
            for m in range(j + 1):
                acc = acc + self[m] * other[j - m]
            out.append(acc)
        return TruncatedSeries(n, tuple(out))

    def is_one(self) -> bool:
        return self[0] == 1 and all(c.is_zero() for c in self.coefficients[1:])


def series_inverse(c: TruncatedSeries, order: int) -> TruncatedSeries:
    """Formal inverse of ``c`` modulo ``t^(order+1)``.

    Uses p_0 = 1, p_j = -sum_{m=1}^{j} c_m p_{j-m}; coefficients of ``c``
    beyond its own order count as zero.
    """
    profile = c.generator_degrees
    if c[0] != 1:
        raise NonInvertibleError("constant term of series is not 1")
    p = [GradedPolynomial.constant(profile)]
    for j in range(1, order + 1):
        acc = GradedPolynomial.zero(profile)
        for m in range(1, min(j, c.order) + 1):
            if not c[m].is_zero():
                acc = acc - c[m] * p[j - m]
        p.append(acc)
    return TruncatedSeries(order, tuple(p))


def chern_series(k: int, order: int) -> TruncatedSeries:
    """``1 + c_1 t + ... + c_{k+1} t^{k+1}`` in generators of degrees 1..k+1."""
    profile = tuple(range(1, k + 2))
    coeffs = [GradedPolynomial.constant(profile)]
    for i in range(1, order + 1):
        coeffs.append(GradedPolynomial.generator(profile, i - 1) if i <= k + 1 else GradedPolynomial.zero(profile))
    return TruncatedSeries(order, tuple(coeffs))


class InverseChernSeries:
    """Memoized coefficients p_j of 1/c(S) for a rank k+1 bundle.

    Each instance owns its table; nothing is shared between handles.
    """

    def __init__(self, k: int):
        if k < 0:
            raise ValueError("k must be non-negative")
        self.k = k
        self.profile = tuple(range(1, k + 2))
        self._p = [GradedPolynomial.constant(self.profile)]
        self._lock = threading.Lock()

    def p(self, j: int) -> GradedPolynomial:
        if j < 0:
            raise ValueError("j must be non-negative")
        with self._lock:
            while len(self._p) <= j:
                n = len(self._p)
                acc = GradedPolynomial.zero(self.profile)
                for m in range(1, min(n, self.k + 1) + 1):
                    acc = acc - GradedPolynomial.generator(self.profile, m - 1) * self._p[n - m]
                self._p.append(acc)
            return self._p[j]


def p_class(j: int, k: int, table: InverseChernSeries | None = None) -> GradedPolynomial:
    """p_j(c_1, ..., c_{k+1}); pass ``table`` to reuse a memo handle."""
    if table is None:
        table = InverseChernSeries(k)
    elif table.k != k:
        raise ProfileError("memo handle built for a different k")
    return table.p(j)


def monomials_of_degree(generator_degrees: Sequence[int], degree: int) -> list[Exponents]:
    """Exponent vectors of the given graded degree, descending lexicographic."""
    degs = tuple(generator_degrees)
    out: list[Exponents] = []

    def rec(i: int, remaining: int, prefix: list[int]) -> None:
        if i == len(degs):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for e in range(remaining // degs[i], -1, -1):
            rec(i + 1, remaining - e * degs[i], prefix + [e])

    if degree >= 0:
        rec(0, degree, [])
    return out
