"""Chow rings of linear Grassmannians G(P^k, P^r) and of the spaces of
degree-d maps P^k -> P^r, with the canonical isomorphism between them."""

from .algebra import GradedPolynomial, TruncatedSeries, p_class, series_inverse
from .nonlinear import NonlinearElement, NonlinearRing, lambda_inverse, lambda_map, nl_multiply, scaled_relations
from .schubert import GrassmannRing, SchubertElement, multiply, to_schubert

__version__ = "0.1.0"
