"""Differential Tor of spans of graded-commutative algebras.

Bar and cobar constructions, the two-sided bar complex, exact homology over
Z, Q and prime fields, and the product on Tor.
"""
from __future__ import annotations

from .algebra import FreeGca, morphism_from_images, parse_polynomial
from .barcobar import BarConstruction, CobarConstruction
from .exceptions import DgTorError, ParseError, ResourceGuardExceeded, ValidationError
from .linalg import QQ, ZZ, CoefficientRing, GF
from .spanspec import SpanSpec, build, emit_spec, fixture, list_fixtures, parse_spec, run
from .tor import (
    KoszulComplex,
    TorSpace,
    TwoSidedBar,
    classical_product,
    koszul_oracle,
    shuffle_product,
    tor_map,
    tor_map_with_homotopy,
)

__version__ = "0.1.0"

__all__ = [
    "BarConstruction",
    "CobarConstruction",
    "CoefficientRing",
    "DgTorError",
    "FreeGca",
    "GF",
    "KoszulComplex",
    "ParseError",
    "QQ",
    "ResourceGuardExceeded",
    "SpanSpec",
    "TorSpace",
    "TwoSidedBar",
    "ValidationError",
    "ZZ",
    "build",
    "classical_product",
    "emit_spec",
    "fixture",
    "koszul_oracle",
    "list_fixtures",
    "morphism_from_images",
    "parse_polynomial",
    "parse_spec",
    "run",
    "shuffle_product",
    "tor_map",
    "tor_map_with_homotopy",
]
