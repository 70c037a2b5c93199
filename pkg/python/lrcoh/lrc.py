"""The Lie–Rinehart complex Hom_A(∧• Der_k(A), A) with the trivial connection.

A cochain of degree n and internal degree e is stored by its values on the
wedge generators G_I (|I| = n, I increasing). The differential evaluates

    dφ(D_0..D_n) = Σ_i (−1)^i D_i(φ(..D̂_i..)) + Σ_{i<j} (−1)^{i+j} φ([D_i, D_j], ..D̂_i..D̂_j..)

on the generators; brackets are rewritten in the generators before φ is
applied A-linearly.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from . import config
from .action import CyclicActionType, XiWeight
from .deriv import Derivation, apply, bracket
from .errors import DimensionMismatchError, InstabilityError
from .presmod import (
    CochainSpaceBasis,
    DerPresentation,
    SlotLayout,
    WedgePresentation,
    build_presentation,
    cochain_space,
    wedge_presentation,
    wedge_sign,
)
from .qlinalg import QMatrix, RowSpace, dense, kernel_basis, rank, solve
from .wpoly import Poly, WeightedAlgebra

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cochain:
    W: WedgePresentation
    e: int
    values: Tuple[Poly, ...]

    def __post_init__(self):
        if len(self.values) != len(self.W.generators):
            raise DimensionMismatchError(
                f"{len(self.values)} values for {len(self.W.generators)} wedge generators"
            )

    @property
    def n(self) -> int:
        return self.W.n

    @classmethod
    def zero(cls, W: WedgePresentation, e: int) -> "Cochain":
        return cls(W, e, tuple(Poly.zero(W.alg.nvars) for _ in W.generators))

    def value(self, I: Sequence[int]):
        """φ(G_I) for any index tuple, with the wedge sign; zero on repeats."""
        sign, J = wedge_sign(I)
        if not sign:
            return Poly.zero(self.W.alg.nvars)
        v = self.values[self.W.position[J]]
        return v if sign > 0 else -v

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def _check(self, other: "Cochain"):
        if other.W is not self.W or other.e != self.e:
            raise DimensionMismatchError("cochains of different shapes")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.W, self.e, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.W, self.e, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "Cochain":
        return Cochain(self.W, self.e, tuple(v * c for v in self.values))

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and other.W is self.W
            and other.e == self.e
            and other.values == self.values
        )

    def __hash__(self):
        return hash((id(self.W), self.e, self.values))


@dataclass(frozen=True)
class CohomologyClass:
    n: int
    e: int
    representative: Cochain
    weight: Optional[XiWeight] = None


def trivial_connection_apply(D: Derivation, a: Poly) -> Poly:
    """∇_D(a) = D(a), the trivial connection on A."""
    return apply(D, a)


class LieRinehartComplex:
    """Cochain spaces, differentials and cohomology of (Der_k(A), A).

    The presentation is computed once; cochain spaces, differential matrices
    and bracket expressions are cached per (n, e, weight).
    """

    def __init__(self, alg: WeightedAlgebra, bound: Optional[int] = None,
                 act: Optional[CyclicActionType] = None,
                 presentation: Optional[DerPresentation] = None):
        self.alg = alg
        self.act = act or CyclicActionType.trivial(alg.nvars)
        self.bound = bound if bound is not None else config.default_bound(alg.degree, alg.weights)
        self.P = presentation or build_presentation(alg, self.bound, self.act)
        self._wedges: Dict[int, WedgePresentation] = {}
        self._brackets: Dict[Tuple[int, int], Tuple[Poly, ...]] = {}
        self._dmatrices: Dict[tuple, QMatrix] = {}

    @property
    def generators(self):
        return self.P.generators

    @property
    def gens(self):
        return self.P.gens

    def wedge(self, n: int) -> WedgePresentation:
        if n not in self._wedges:
            self._wedges[n] = wedge_presentation(self.P, n)
        return self._wedges[n]

    def space(self, n: int, e: int, weight: Optional[XiWeight] = None) -> CochainSpaceBasis:
        if weight is not None:
            weight %= self.act.m
        return cochain_space(self.wedge(n), e, weight)

    def dimension(self, n: int, e: int, weight: Optional[XiWeight] = None) -> int:
        return self.space(n, e, weight).dimension

    # ---------- cochains ----------

    def cochain(self, n: int, e: int, values: Sequence[Poly]) -> Cochain:
        W = self.wedge(n)
        return Cochain(W, e, tuple(self.alg.normal_form(v) for v in values))

    def from_vector(self, n: int, e: int, vec: Sequence, weight: Optional[XiWeight] = None) -> Cochain:
        layout = self.space(n, e, weight).layout
        return Cochain(self.wedge(n), e, layout.values(vec))

    def basis_cochains(self, n: int, e: int, weight: Optional[XiWeight] = None) -> List[Cochain]:
        sp = self.space(n, e, weight)
        return [Cochain(sp.W, e, vals) for vals in sp.assignments()]

    def random_cochain(self, n: int, e: int, rng: random.Random,
                       weight: Optional[XiWeight] = None) -> Cochain:
        c = Cochain.zero(self.wedge(n), e)
        for b in self.basis_cochains(n, e, weight):
            r = rng.randint(-3, 3)
            if r:
                c = c + b.scale(r)
        return c

    def satisfies_relations(self, c: Cochain) -> bool:
        for rel in c.W.relations:
            total = Poly.zero(self.alg.nvars)
            for I, coef in rel.coefficients.items():
                total = total + coef * c.values[c.W.position[I]]
            if not self.alg.normal_form(total).is_zero():
                return False
        return True

    # ---------- evaluation ----------

    def bracket_coefficients(self, a: int, b: int, rng: Optional[random.Random] = None) -> Tuple[Poly, ...]:
        """Coefficients of [G_a, G_b] in the generators."""
        if rng is not None:
            return self.gens.express(bracket(self.generators[a], self.generators[b]), rng)
        key = (a, b)
        if key not in self._brackets:
            self._brackets[key] = self.gens.express(bracket(self.generators[a], self.generators[b]))
        return self._brackets[key]

    def evaluate(self, c: Cochain, derivations: Sequence[Derivation],
                 rng: Optional[random.Random] = None):
        """φ(D_1 ∧ .. ∧ D_n) for arbitrary derivations, extending φ A-multilinearly."""
        if len(derivations) != c.n:
            raise DimensionMismatchError(f"{len(derivations)} arguments for a {c.n}-cochain")
        expansions = [self.gens.express(D, rng) for D in derivations]
        total = Poly.zero(self.alg.nvars)
        for I in product(range(len(self.generators)), repeat=c.n):
            coef = Poly.one(self.alg.nvars)
            for k, l in enumerate(I):
                coef = coef * expansions[k][l]
                if not coef:
                    break
            if coef:
                total = total + coef * c.value(I)
        return self.alg.normal_form(total)

    def _bracket_term(self, c: Cochain, a: int, b: int, rest: Tuple[int, ...],
                      rng: Optional[random.Random]):
        coeffs = self.bracket_coefficients(a, b, rng)
        total = Poly.zero(self.alg.nvars)
        for l, coef in enumerate(coeffs):
            if coef:
                v = c.value((l,) + rest)
                if v:
                    total = total + coef * v
        return total

    def differential(self, c: Cochain, rng: Optional[random.Random] = None) -> Cochain:
        """d(c); with ``rng`` every bracket is expressed through a random alternative solution."""
        target = self.wedge(c.n + 1)
        gens = self.generators
        values = []
        for I in target.generators:
            val = Poly.zero(self.alg.nvars)
            for i in range(len(I)):
                inner = c.value(I[:i] + I[i + 1:])
                if inner:
                    term = trivial_connection_apply(gens[I[i]], inner)
                    val = val + (term if i % 2 == 0 else -term)
            for i, j in combinations(range(len(I)), 2):
                rest = tuple(I[k] for k in range(len(I)) if k not in (i, j))
                term = self._bracket_term(c, I[i], I[j], rest, rng)
                if term:
                    val = val + (term if (i + j) % 2 == 0 else -term)
            values.append(self.alg.normal_form(val))
        return Cochain(target, c.e, tuple(values))

    # ---------- matrices ----------

    def differential_matrix(self, n: int, e: int, weight: Optional[XiWeight] = None) -> QMatrix:
        """Columns: slot coordinates in Cⁿ⁺¹_e of d applied to the basis of Cⁿ_e."""
        key = (n, e, weight)
        if key not in self._dmatrices:
            source = self.space(n, e, weight)
            layout = SlotLayout(self.wedge(n + 1), e, weight)
            columns = [layout.vector(self.differential(b).values) for b in self.basis_cochains(n, e, weight)]
            self._dmatrices[key] = QMatrix.from_columns(columns, rows=len(layout))
            logger.debug("d^%d at degree %d (weight %s): %dx%d", n, e, weight,
                         len(layout), source.dimension)
        return self._dmatrices[key]

    def _image_space(self, n: int, e: int, weight: Optional[XiWeight]) -> RowSpace:
        """im dⁿ⁻¹ inside the slot coordinates of Cⁿ_e."""
        layout = self.space(n, e, weight).layout
        space = RowSpace(len(layout))
        if n == 0:
            return space
        for b in self.basis_cochains(n - 1, e, weight):
            space.add(layout.vector(self.differential(b).values))
        return space

    # ---------- cohomology ----------

    def cohomology(self, n: int, e: int, weight: Optional[XiWeight] = None) -> Tuple[int, List[CohomologyClass]]:
        """dim Hⁿ_e (optionally one ξ-weight block) and representative cocycles."""
        if weight is not None:
            weight %= self.act.m
        sp = self.space(n, e, weight)
        if not sp.dimension:
            return 0, []
        D = self.differential_matrix(n, e, weight)

        cocycles = []
        for k in kernel_basis(D):
            vec = [Fraction(0)] * len(sp.layout)
            for coef, b in zip(k, sp.basis):
                if coef:
                    vec = [x + coef * y for x, y in zip(vec, b)]
            cocycles.append(vec)
        image = self._image_space(n, e, weight)
        classes = []
        for vec in cocycles:
            if image.add({i: x for i, x in enumerate(vec) if x}):
                rep = Cochain(sp.W, e, sp.layout.values(vec))
                classes.append(CohomologyClass(n, e, rep, weight))
        dim = len(classes)
        logger.info("H^%d_%d%s = %d", n, e, "" if weight is None else f" (weight {weight})", dim)
        return dim, classes

    def cohomology_dimension(self, n: int, e: int, weight: Optional[XiWeight] = None) -> int:
        sp = self.space(n, e, weight)
        if not sp.dimension:
            return 0
        r_n = rank(self.differential_matrix(n, e, weight))
        r_prev = rank(self.differential_matrix(n - 1, e, weight)) if n > 0 else 0
        return sp.dimension - r_n - r_prev

    def table(self, window: Tuple[int, int], max_n: int = 2,
              weight: Optional[XiWeight] = None) -> Dict[Tuple[int, int], int]:
        return {
            (n, e): self.cohomology_dimension(n, e, weight)
            for n in range(max_n + 1)
            for e in range(window[0], window[1] + 1)
        }

    # ---------- coboundaries ----------

    def _solve_preimage(self, c: Cochain, weight: Optional[XiWeight]):
        if c.n == 0:
            return None if not c.is_zero() else ()
        layout = self.space(c.n, c.e, weight).layout
        D = self.differential_matrix(c.n - 1, c.e, weight)
        b = dense(layout.vector(c.values), len(layout))
        return solve(D, b)

    def is_coboundary(self, c: Cochain, weight: Optional[XiWeight] = None) -> bool:
        return self._solve_preimage(c, weight) is not None

    def coboundary_preimage(self, c: Cochain, weight: Optional[XiWeight] = None) -> Optional[Cochain]:
        """Some b with d(b) = c, or None."""
        x = self._solve_preimage(c, weight)
        if x is None:
            return None
        if c.n == 0:
            return Cochain.zero(self.wedge(0), c.e)
        coords = [Fraction(0)] * len(self.space(c.n - 1, c.e, weight).layout)
        for coef, b in zip(x, self.space(c.n - 1, c.e, weight).basis):
            if coef:
                coords = [p + coef * q for p, q in zip(coords, b)]
        return self.from_vector(c.n - 1, c.e, coords, weight)

    def h_coordinates(self, c: Cochain, classes: Sequence[CohomologyClass],
                      weight: Optional[XiWeight] = None) -> Optional[Tuple[Fraction, ...]]:
        """Coordinates of the class of the cocycle c against the given representatives.

        Solves c = Σ λ_k rep_k + d(b); None if c is not in that span.
        """
        layout = self.space(c.n, c.e, weight).layout
        columns = [layout.vector(cl.representative.values) for cl in classes]
        if c.n > 0:
            D = self.differential_matrix(c.n - 1, c.e, weight)
            for col in D.transpose().row_dicts():
                columns.append(col)
        M = QMatrix.from_columns(columns, rows=len(layout))
        x = solve(M, dense(layout.vector(c.values), len(layout)))
        if x is None:
            return None
        return tuple(x[: len(classes)])


def cohomology(alg: WeightedAlgebra, P: DerPresentation, n: int, e: int,
               weight: Optional[XiWeight] = None) -> Tuple[int, List[CohomologyClass]]:
    return LieRinehartComplex(alg, P.bound, P.act, presentation=P).cohomology(n, e, weight)


def differential(cx: LieRinehartComplex, c: Cochain) -> Cochain:
    return cx.differential(c)


def stability_check(alg: WeightedAlgebra, act: Optional[CyclicActionType], bound: int,
                    window: Tuple[int, int], max_n: int = 2, step: int = 2,
                    strict: bool = False) -> List[str]:
    """Cohomology dimensions for bounds B and B+step; messages for every disagreement.

    With ``strict`` a disagreement raises InstabilityError.
    """
    weights = [None] if act is None or act.is_trivial else [None] + list(act.weights())
    cx1 = LieRinehartComplex(alg, bound, act)
    cx2 = LieRinehartComplex(alg, bound + step, act)
    messages = []
    for weight in weights:
        t1 = cx1.table(window, max_n, weight)
        t2 = cx2.table(window, max_n, weight)
        for key in sorted(t1):
            if t1[key] != t2[key]:
                n, e = key
                label = "" if weight is None else f" weight {weight}"
                messages.append(
                    f"H^{n}_{e}{label}: {t1[key]} at bound {bound}, {t2[key]} at bound {bound + step}"
                )
    for msg in messages:
        logger.warning("unstable: %s", msg)
    if messages and strict:
        raise InstabilityError("; ".join(messages))
    return messages
