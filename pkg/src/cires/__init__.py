"""Exact verification of the Parseval-Rayleigh identity for complete
intersections in positive characteristic, with certificates for
p-anisotropy and the Strong Lefschetz Property of generic instances."""

from .algebra import ExtensionField, FieldElement, PrimeField, build_extension
from .errors import CiresError
from .polyring import PolyRing, Polynomial
from .quotient import CompleteIntersection, QuotientStructure, hilbert_check
from .report import VerificationReport
from .residue import build_residue_map

__version__ = "0.1.0"

__all__ = [
    "CiresError",
    "CompleteIntersection",
    "ExtensionField",
    "FieldElement",
    "PolyRing",
    "Polynomial",
    "PrimeField",
    "QuotientStructure",
    "VerificationReport",
    "build_extension",
    "build_residue_map",
    "hilbert_check",
    "__version__",
]
