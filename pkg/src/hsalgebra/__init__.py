"""Exact desk-scale computations for Hensel-Steinitz algebras HS(s)."""

from .cylinder import CylFn, alpha_endo, indicator, lipschitz, refine
from .errors import DomainError, ParameterError, ParseError, UnsupportedError
from .fredholm import index_pairing, pairing_identity
from .khomology import HomT, expand, generator, pair, reconstruct
from .sadic import SAdic, from_integer
from .spectral import LambdaParams, triple_index

__all__ = [
    "CylFn", "DomainError", "HomT", "LambdaParams", "ParameterError", "ParseError",
    "SAdic", "UnsupportedError", "alpha_endo", "expand", "from_integer", "generator",
    "index_pairing", "indicator", "lipschitz", "pair", "pairing_identity", "reconstruct",
    "refine", "triple_index",
]
