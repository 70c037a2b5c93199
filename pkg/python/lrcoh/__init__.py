"""Graded and equivariant Lie–Rinehart cohomology of quasi-homogeneous surface singularities."""

from .action import CyclicActionType, XiScalar
from .deriv import Derivation, bracket, der_generators, der_graded_basis, euler, express_in_generators
from .errors import LrcohError
from .lrc import Cochain, CohomologyClass, LieRinehartComplex
from .presmod import build_presentation, cochain_space, wedge_presentation
from .wpoly import Poly, WeightedAlgebra, WeightSystem, format_poly, parse_poly

__all__ = [
    "Cochain",
    "CohomologyClass",
    "CyclicActionType",
    "Derivation",
    "LieRinehartComplex",
    "LrcohError",
    "Poly",
    "WeightSystem",
    "WeightedAlgebra",
    "XiScalar",
    "bracket",
    "build_presentation",
    "cochain_space",
    "der_generators",
    "der_graded_basis",
    "euler",
    "express_in_generators",
    "format_poly",
    "parse_poly",
    "wedge_presentation",
]
