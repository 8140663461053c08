"""Push-forward along the projective bundle P(S) -> G(P^k, P^n).

The Chow ring of P(S) is Ch(G)[xi] modulo
xi^{k+1} + c_1(S) xi^k + ... + c_{k+1}(S) = 0, with xi = c_1(O_{P(S)}(1)).
Push-forward is read off the reduced form: xi^m goes to 0 for m < k and
xi^k * x goes to x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import ProfileError
from .schubert import GrassmannRing, SchubertElement, chern_S, to_schubert


@dataclass(frozen=True)
class XiPolynomial:
    """sum_m coeffs[m] * xi^m with Schubert-class coefficients."""

    ring: GrassmannRing
    coeffs: tuple[SchubertElement, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        for c in coeffs:
            if c.ring != self.ring:
                raise ProfileError("coefficient from a different Grassmannian")
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def xi_power(cls, ring: GrassmannRing, m: int, scale=1) -> "XiPolynomial":
        return cls(ring, (ring.zero(),) * m + (ring.one() * Fraction(scale),))

    @property
    def xi_degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, m: int) -> SchubertElement:
        return self.coeffs[m] if 0 <= m < len(self.coeffs) else self.ring.zero()

    def is_homogeneous(self) -> bool:
        degs = {c.degree + m for m, c in enumerate(self.coeffs) if not c.is_zero()}
        return all(c.is_homogeneous() for c in self.coeffs) and len(degs) <= 1

    def __add__(self, other: "XiPolynomial") -> "XiPolynomial":
        if other.ring != self.ring:
            raise ProfileError("XiPolynomials over different rings")
        n = max(len(self.coeffs), len(other.coeffs))
        return XiPolynomial(self.ring, tuple(self.coefficient(m) + other.coefficient(m) for m in range(n)))

    def __mul__(self, other) -> "XiPolynomial":
        if isinstance(other, (int, Fraction, SchubertElement)):
            return XiPolynomial(self.ring, tuple(c * other for c in self.coeffs))
        if other.ring != self.ring:
            raise ProfileError("XiPolynomials over different rings")
        out = [self.ring.zero()] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return XiPolynomial(self.ring, tuple(out))

    def times_xi(self) -> "XiPolynomial":
        return XiPolynomial(self.ring, (self.ring.zero(),) + self.coeffs)

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, ring: GrassmannRing, records: Sequence[Mapping]) -> "XiPolynomial":
        return cls(ring, tuple(SchubertElement.from_json(rec, ring) for rec in records))


def reduce_xi(p: XiPolynomial) -> XiPolynomial:
    """Rewrite so that only xi^0..xi^k appear."""
    ring = p.ring
    k = ring.k
    chern = [chern_S(ring, i) for i in range(k + 2)]
    coeffs = list(p.coeffs)
    for m in range(len(coeffs) - 1, k, -1):
        top = coeffs[m]
        if top.is_zero():
            continue
        # xi^m = -sum_i c_i(S) xi^{m-i}
        for i in range(1, k + 2):
            coeffs[m - i] = coeffs[m - i] - top * chern[i]
        coeffs[m] = ring.zero()
    return XiPolynomial(ring, tuple(coeffs))


def pushforward(p: XiPolynomial) -> SchubertElement:
    return reduce_xi(p).coefficient(p.ring.k)


def bilt_pushforward(ring: GrassmannRing, r: int, d: int, alpha: int) -> SchubertElement:
    """pi_*(c_1(L)^{r+1+alpha}) for L = O_{P(S)}(d) over the ambient ``ring``."""
    if d < 1 or alpha < 0:
        raise ValueError("need d >= 1 and alpha >= 0")
    return pushforward(XiPolynomial.xi_power(ring, r + 1 + alpha, Fraction(d) ** (r + 1 + alpha)))


def bilt_expected(ring: GrassmannRing, r: int, d: int, alpha: int) -> SchubertElement:
    """d^{r+1+alpha} * p_{r-k+1+alpha}, through the power-series route."""
    j = r - ring.k + 1 + alpha
    return to_schubert(ring, ring.p_table.p(j)) * Fraction(d) ** (r + 1 + alpha)
