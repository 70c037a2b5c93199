"""Input documents and reports.

Problem, module and connection documents are JSON files validated into
pydantic models; every command answers with a ``Report`` that serializes to
JSON and parses back unchanged.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator

from .action import CyclicActionType
from .errors import NotHomogeneousError, ProblemFileError
from .wpoly import DEFAULT_VARIABLES, Poly, WeightedAlgebra, WeightSystem, parse_poly, weighted_degree

GALOIS_BRIDGE_NOTE = (
    "invariant dimensions are cohomology of the invariant ring only under the asserted "
    "Galois hypothesis; the identification is asserted, not computed"
)


# ============================================================
#  INPUT DOCUMENTS
# ============================================================


class ActionSpec(BaseModel):
    m: int = Field(ge=1)
    exponents: List[int]


class ProblemSpec(BaseModel):
    variables: List[str] = Field(default_factory=lambda: list(DEFAULT_VARIABLES))
    weights: List[int]
    degree: Optional[int] = None
    f: str
    action: Optional[ActionSpec] = None
    galois_asserted: bool = False
    degree_window: Optional[Tuple[int, int]] = None
    presentation_bound: Optional[int] = None
    max_n: Optional[int] = None

    @field_validator("variables")
    @classmethod
    def _three_variables(cls, v: List[str]) -> List[str]:
        if len(v) != 3 or len(set(v)) != 3:
            raise ValueError("exactly three distinct variable names are required")
        return v

    @field_validator("weights")
    @classmethod
    def _positive_weights(cls, v: List[int]) -> List[int]:
        if len(v) != 3 or any(w <= 0 for w in v):
            raise ValueError("three positive weights are required")
        return v


class ModuleSpec(BaseModel):
    """Generators of a homogeneous ideal; ``weights`` overrides the computed ξ-weights."""

    generators: List[str]
    weights: Optional[List[int]] = None


class ConnectionSpec(BaseModel):
    """Either the full Γ table, or the trivial connection optionally twisted by a one-form.

    ``gamma[i][j][l]`` is the coefficient of u_l in ∇_{G_i}(u_j); ``one_form[i]``
    is ω(G_i); ``exact`` twists by the exact form D ↦ D(b). Generator order is
    the one printed by the ``cohomology`` command.
    """

    trivial: bool = False
    one_form: Optional[List[str]] = None
    exact: Optional[str] = None
    gamma: Optional[List[List[List[str]]]] = None


def _load(path, model):
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ProblemFileError(f"{path}: file not found")
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")
    return validate_document(raw, model, str(path))


def validate_document(raw, model, source: str):
    try:
        return model.model_validate(raw)
    except ValidationError as e:
        problems = [
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()
        ]
        raise ProblemFileError(f"{source}: " + "; ".join(problems))


def load_problem(path) -> ProblemSpec:
    return _load(path, ProblemSpec)


def load_module(path) -> ModuleSpec:
    return _load(path, ModuleSpec)


def load_connection(path) -> ConnectionSpec:
    return _load(path, ConnectionSpec)


def problem_from_dict(raw: dict) -> ProblemSpec:
    return validate_document(raw, ProblemSpec, "problem")


def build_algebra(spec: ProblemSpec) -> WeightedAlgebra:
    """Parse f and check homogeneity; the degree is inferred when not given."""
    f = parse_poly(spec.f, spec.variables)
    if f.is_zero():
        raise ProblemFileError("f: the polynomial is zero")
    degree = spec.degree
    if degree is None:
        degree = max(weighted_degree(mon, spec.weights) for mon in f.terms)
    if f.is_constant():
        raise NotHomogeneousError(f.terms, degree, "f is a non-zero constant, so A = 0; a positive degree is required")
    return WeightedAlgebra(f, WeightSystem(degree, spec.weights))


def build_action(spec: ProblemSpec) -> Optional[CyclicActionType]:
    if spec.action is None:
        return None
    if len(spec.action.exponents) != 3:
        raise ProblemFileError("action.exponents: three exponents are required")
    return CyclicActionType(spec.action.m, tuple(spec.action.exponents))


def parse_polys(texts: List[str], variables) -> List[Poly]:
    return [parse_poly(t, variables) for t in texts]


def fraction_text(x: Fraction) -> str:
    return str(Fraction(x))


# ============================================================
#  REPORTS
# ============================================================


class ActionCheck(BaseModel):
    m: int
    exponents: List[int]
    compatible: bool
    strict_equality: bool
    exponent_shift: int
    h_weight: int


class PseudoReflectionSummary(BaseModel):
    fixed_dimensions: Dict[int, int]
    pseudo_reflections: List[int]


class CheckSection(BaseModel):
    homogeneous: bool
    degree: int
    weights: List[int]
    degree_shift: int
    hilbert: List[int]
    action: Optional[ActionCheck] = None
    pseudo_reflections: Optional[PseudoReflectionSummary] = None
    galois_asserted: bool = False
    equivariant: bool = False


class GeneratorInfo(BaseModel):
    index: int
    degree: int
    weight: int
    coefficients: List[str]


class CohomologyEntry(BaseModel):
    n: int
    e: int
    dimension: int
    weight_dimensions: Dict[int, int] = Field(default_factory=dict)
    invariant_dimension: Optional[int] = None
    class_weights: List[Optional[int]] = Field(default_factory=list)


class CohomologySection(BaseModel):
    window: Tuple[int, int]
    max_n: int
    bound: int
    generators: List[GeneratorInfo]
    entries: List[CohomologyEntry]


class ClassSummary(BaseModel):
    e: int
    is_cocycle: bool
    is_coboundary: bool
    coordinates: Optional[List[str]] = None


class ModuliSummary(BaseModel):
    equivalent: bool
    is_cocycle: bool
    omega: List[str]
    components: List[ClassSummary]


class ConnectionSection(BaseModel):
    valid: bool
    violations: List[str] = Field(default_factory=list)
    integrable: Optional[bool] = None
    curvature: List[str] = Field(default_factory=list)
    integrability_class_zero: Optional[bool] = None
    integrability_components: List[ClassSummary] = Field(default_factory=list)
    averaged: bool = False
    averaged_valid: Optional[bool] = None
    averaged_class_zero: Optional[bool] = None
    invariant_h1_dimension: Optional[int] = None
    moduli: Optional[ModuliSummary] = None
    conclusion: str = ""


class Report(BaseModel):
    command: str
    f: str
    weights: List[int]
    degree: int
    degree_shift: int
    exponent_shift: Optional[int] = None
    check: Optional[CheckSection] = None
    cohomology: Optional[CohomologySection] = None
    connection: Optional[ConnectionSection] = None
    warnings: List[str] = Field(default_factory=list)
    errors: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    ok: bool = True
    unstable: bool = False

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.model_validate_json(text)

    def consistent(self) -> bool:
        """Weight blocks sum to totals wherever they are reported."""
        if self.cohomology is None:
            return True
        return all(
            not entry.weight_dimensions or sum(entry.weight_dimensions.values()) == entry.dimension
            for entry in self.cohomology.entries
        )
