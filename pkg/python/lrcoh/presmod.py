"""Graded presentations of Der_k(A) and its exterior powers, and the cochain spaces

    Cⁿ_e = Hom_A(∧ⁿ Der_k(A), A)_e.

For a presentation F/U of Der_k(A), ∧ⁿ(F/U) = ∧ⁿF / (U ∧ ∧ⁿ⁻¹F); the relations
of ∧ⁿ are therefore the Der relations wedged with (n−1)-subsets of generators.
A cochain is an assignment of one value in A_{w_I + e} to every wedge
generator G_I, killed by every relation.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .action import CyclicActionType, XiWeight
from .deriv import GeneratorSet, der_generators
from .qlinalg import QMatrix, RowSpace, kernel_basis
from .wpoly import Monomial, Poly, WeightedAlgebra

logger = logging.getLogger(__name__)

Index = Tuple[int, ...]


@dataclass(frozen=True)
class Relation:
    """Σ_I coefficients[I]·G_I = 0, homogeneous of internal degree ``degree``."""

    coefficients: Dict[Index, Poly]
    degree: int
    weight: XiWeight

    def __hash__(self):
        return hash((frozenset(self.coefficients.items()), self.degree, self.weight))


@dataclass
class DerPresentation:
    alg: WeightedAlgebra
    act: CyclicActionType
    bound: int
    gens: GeneratorSet
    relations: List[Relation] = field(default_factory=list)

    @property
    def generators(self):
        return self.gens.gens

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self.gens.degrees

    @property
    def weights(self) -> Tuple[XiWeight, ...]:
        return self.gens.weights

    def __len__(self):
        return len(self.gens)

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other


def build_presentation(alg: WeightedAlgebra, bound: int, act: Optional[CyclicActionType] = None) -> DerPresentation:
    """Generators up to ``bound`` and a minimal homogeneous set of relations up to ``bound``."""
    act = act or CyclicActionType.trivial(alg.nvars)
    gens = GeneratorSet(alg, der_generators(alg, bound, act), act)
    relations: List[Relation] = []
    if not len(gens):
        return DerPresentation(alg, act, bound, gens, relations)
    for e in range(min(gens.degrees), bound + 1):
        for t in act.weights():
            syz, unknowns = gens.syzygy_vectors(e, t)
            if not syz:
                continue
            position = {u: k for k, u in enumerate(unknowns)}
            space = RowSpace(len(unknowns))
            # A-multiples of the relations kept so far
            for rel in relations:
                for mon in alg.graded_basis(e - rel.degree):
                    if (act.monomial_weight(mon) + rel.weight) % act.m != t:
                        continue
                    row = {}
                    for (l,), c in rel.coefficients.items():
                        shifted = alg.normal_form(c * Poly.monomial(mon))
                        for cm, cv in shifted.terms.items():
                            row[position[(l, cm)]] = cv
                    space.add(row)
            for v in syz:
                row = {k: c for k, c in enumerate(v) if c}
                if space.add(row):
                    coeffs = gens.coefficients_from_vector(v, unknowns)
                    relations.append(Relation(
                        {(l,): c for l, c in enumerate(coeffs) if c}, e, t))
    logger.info("presentation: %d generators, %d relations (bound %d)",
                len(gens), len(relations), bound)
    return DerPresentation(alg, act, bound, gens, relations)


def wedge_sign(indices: Sequence[int]) -> Tuple[int, Optional[Index]]:
    """Sort indices, returning (sign of the permutation, sorted tuple); (0, None) on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


@dataclass
class WedgePresentation:
    n: int
    base: DerPresentation
    generators: List[Index]
    degrees: List[int]
    weights: List[XiWeight]
    relations: List[Relation]

    def __post_init__(self):
        self.position = {I: k for k, I in enumerate(self.generators)}
        self.spaces: Dict[Tuple[int, Optional[XiWeight]], "CochainSpaceBasis"] = {}

    @property
    def alg(self) -> WeightedAlgebra:
        return self.base.alg

    @property
    def act(self) -> CyclicActionType:
        return self.base.act

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other


def wedge_presentation(P: DerPresentation, n: int) -> WedgePresentation:
    k = len(P)
    m = P.act.m
    if n == 0:
        return WedgePresentation(0, P, [()], [0], [0], [])
    if n > k:
        return WedgePresentation(n, P, [], [], [], [])
    gens = list(combinations(range(k), n))
    degrees = [sum(P.degrees[i] for i in I) for I in gens]
    weights = [sum(P.weights[i] for i in I) % m for I in gens]
    if n == 1:
        return WedgePresentation(1, P, gens, degrees, weights, list(P.relations))
    relations = []
    for rel in P.relations:
        for J in combinations(range(k), n - 1):
            coeffs: Dict[Index, Poly] = {}
            for (i,), c in rel.coefficients.items():
                sign, I = wedge_sign((i,) + J)
                if not sign:
                    continue
                coeffs[I] = coeffs.get(I, Poly.zero(P.alg.nvars)) + c * sign
            coeffs = {I: c for I, c in coeffs.items() if c}
            if coeffs:
                relations.append(Relation(
                    coeffs,
                    rel.degree + sum(P.degrees[j] for j in J),
                    (rel.weight + sum(P.weights[j] for j in J)) % m,
                ))
    return WedgePresentation(n, P, gens, degrees, weights, relations)


# ============================================================
#  COCHAIN SPACES
# ============================================================


class SlotLayout:
    """Unknowns (I, x^α) of the values of a degree-e cochain, optionally one ξ-weight only."""

    def __init__(self, W: WedgePresentation, e: int, weight: Optional[XiWeight] = None):
        self.W, self.e, self.weight = W, e, weight
        alg, act = W.alg, W.act
        self.slots: List[Tuple[int, Monomial]] = []
        for k, (w, s) in enumerate(zip(W.degrees, W.weights)):
            for mon in alg.graded_basis(w + e):
                if weight is None or (act.monomial_weight(mon) - s) % act.m == weight:
                    self.slots.append((k, mon))
        self.index = {slot: i for i, slot in enumerate(self.slots)}

    def __len__(self):
        return len(self.slots)

    def values(self, vec: Sequence) -> Tuple[Poly, ...]:
        nv = self.W.alg.nvars
        out = [dict() for _ in self.W.generators]
        for i, c in enumerate(vec):
            if c:
                k, mon = self.slots[i]
                out[k][mon] = c
        return tuple(Poly(nv, t) for t in out)

    def vector(self, values: Sequence[Poly]) -> Dict[int, object]:
        out = {}
        for k, v in enumerate(values):
            for mon, c in v.terms.items():
                try:
                    out[self.index[(k, mon)]] = c
                except KeyError:
                    raise ValueError(
                        f"value on {self.W.generators[k]} has monomial {mon} outside "
                        f"degree {self.e}" + (f", weight {self.weight}" if self.weight is not None else "")
                    )
        return out


@dataclass
class CochainSpaceBasis:
    W: WedgePresentation
    e: int
    weight: Optional[XiWeight]
    layout: SlotLayout
    basis: List[Tuple[Fraction, ...]]

    @property
    def n(self) -> int:
        return self.W.n

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def assignments(self) -> List[Tuple[Poly, ...]]:
        return [self.layout.values(v) for v in self.basis]


def relation_constraints(W: WedgePresentation, layout: SlotLayout) -> QMatrix:
    """Rows: coordinates of Σ_I ρ_I φ(G_I) in A_{δ+e}, for every relation ρ."""
    alg = W.alg
    entries = {}
    row0 = 0
    for rel in W.relations:
        target = rel.degree + layout.e
        dim = alg.dim(target)
        if not dim:
            continue
        for (k, mon), col in layout.index.items():
            c = rel.coefficients.get(W.generators[k])
            if not c:
                continue
            image = alg.normal_form(c * Poly.monomial(mon))
            for r, v in alg.coordinates(image, target).items():
                entries[(row0 + r, col)] = v
        row0 += dim
    return QMatrix(row0, len(layout), entries)


def cochain_space(W: WedgePresentation, e: int, weight: Optional[XiWeight] = None) -> CochainSpaceBasis:
    """Basis of Hom_A(∧ⁿ Der, A)_e (restricted to one ξ-weight when given).

    Results are memoised on W, so they live as long as the presentation does.
    """
    key = (e, weight)
    if key in W.spaces:
        return W.spaces[key]
    layout = SlotLayout(W, e, weight)
    if not len(layout):
        space = CochainSpaceBasis(W, e, weight, layout, [])
    else:
        space = CochainSpaceBasis(W, e, weight, layout, kernel_basis(relation_constraints(W, layout)))
    W.spaces[key] = space
    return space


def cochain_dimension_drift(alg: WeightedAlgebra, act: Optional[CyclicActionType], bound: int,
                            window: Tuple[int, int], max_n: int = 3, step: int = 2) -> List[str]:
    """Compare cochain dimensions for bounds B and B+step; one message per difference."""
    P1 = build_presentation(alg, bound, act)
    P2 = build_presentation(alg, bound + step, act)
    drift = []
    for n in range(max_n + 1):
        W1, W2 = wedge_presentation(P1, n), wedge_presentation(P2, n)
        for e in range(window[0], window[1] + 1):
            d1, d2 = cochain_space(W1, e).dimension, cochain_space(W2, e).dimension
            if d1 != d2:
                drift.append(f"dim C^{n}_{e} changes from {d1} to {d2} between bounds {bound} and {bound + step}")
    for msg in drift:
        logger.warning(msg)
    return drift
