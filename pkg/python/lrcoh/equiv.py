"""Cyclic group actions on the Lie–Rinehart complex.

The action g·xᵢ = ξ^{mᵢ}xᵢ turns every object into a ℤ/m-graded one; the
differential preserves the grading, so invariants are the weight-0 blocks.
Explicit group elements (``act_on_cochain``) are only used to check this
bookkeeping against the elementwise definition g∗φ = gφg⁻¹.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .action import CyclicActionType, XiScalar, XiWeight
from .errors import GaloisHypothesisError, IncompatibleActionError
from .lrc import Cochain, CohomologyClass, LieRinehartComplex
from .presmod import CochainSpaceBasis, cochain_space
from .qlinalg import QMatrix, rank
from .wpoly import Monomial, Poly, WeightedAlgebra

logger = logging.getLogger(__name__)


# ============================================================
#  ACTION COMPATIBILITY
# ============================================================


@dataclass
class ActionReport:
    act: CyclicActionType
    compatible: bool
    strict_equality: bool
    sums: Dict[Monomial, int]
    exponent_shift: int
    degree_shift: int
    warnings: List[str] = field(default_factory=list)

    @property
    def h_weight(self) -> XiWeight:
        """(m1+m2+m3−m) mod m, the weight carried by the H¹ and H² generators."""
        return self.exponent_shift % self.act.m


def check_action(alg: WeightedAlgebra, act: CyclicActionType, raw_exponents: Optional[Sequence[int]] = None) -> ActionReport:
    """Σαᵢmᵢ ≡ 0 (mod m) for every α in the support of f, else IncompatibleActionError.

    ``raw_exponents`` are the exponents as written by the user (before reduction
    mod m); they only matter for the strict test Σαᵢmᵢ = m.
    """
    if len(act.exponents) != alg.nvars:
        raise ValueError(f"action has {len(act.exponents)} exponents for {alg.nvars} variables")
    raw = tuple(raw_exponents) if raw_exponents is not None else act.exponents
    sums = {mon: sum(a * e for a, e in zip(mon, raw)) for mon in sorted(alg.f.terms)}
    offending = [mon for mon, s in sums.items() if s % act.m]
    if offending:
        raise IncompatibleActionError(offending, act.m)
    strict = act.is_trivial or all(s == act.m for s in sums.values())
    warnings = []
    if not strict:
        warnings.append(
            f"action ({act.m};{','.join(map(str, raw))}) fixes f only up to congruence: "
            f"sum(alpha_i*m_i) = {sorted(set(sums.values()))}, not all equal to m"
        )
    for w in warnings:
        logger.warning(w)
    return ActionReport(
        act=act,
        compatible=True,
        strict_equality=strict,
        sums=sums,
        exponent_shift=sum(raw) - act.m,
        degree_shift=alg.ws.shift,
        warnings=warnings,
    )


# ============================================================
#  WEIGHTS OF COCHAINS
# ============================================================


def slot_weight(c: Cochain, k: int, mon: Monomial, act: CyclicActionType) -> XiWeight:
    return (act.monomial_weight(mon) - c.W.weights[k]) % act.m


def xi_weight_of_cochain(c: Cochain, act: CyclicActionType) -> Optional[XiWeight]:
    """t with g∗c = ξᵗc; None when c mixes weights; 0 for the zero cochain."""
    ws = {slot_weight(c, k, mon, act) for k, v in enumerate(c.values) for mon in v.terms}
    if not ws:
        return 0
    return ws.pop() if len(ws) == 1 else None


def weight_components(c: Cochain, act: CyclicActionType) -> Dict[XiWeight, Cochain]:
    buckets: Dict[XiWeight, List[Dict[Monomial, object]]] = {}
    for k, v in enumerate(c.values):
        for mon, coef in v.terms.items():
            t = slot_weight(c, k, mon, act)
            buckets.setdefault(t, [dict() for _ in c.values])[k][mon] = coef
    nv = c.W.alg.nvars
    return {
        t: Cochain(c.W, c.e, tuple(Poly(nv, terms) for terms in slots))
        for t, slots in sorted(buckets.items())
    }


def weight_split(space: CochainSpaceBasis, act: CyclicActionType) -> Dict[XiWeight, CochainSpaceBasis]:
    """Cⁿ_e = ⊕_t Cⁿ_{e,t}; relations are bi-homogeneous so the blocks are independent kernels."""
    if act.is_trivial:
        return {0: space}
    return {t: cochain_space(space.W, space.e, t) for t in act.weights()}


def reynolds(c: Cochain, act: CyclicActionType) -> Cochain:
    """(1/|G|)Σ g∗c, which is the weight-0 component."""
    return weight_components(c, act).get(0, Cochain.zero(c.W, c.e))


def act_on_cochain(k: int, c: Cochain, act: CyclicActionType) -> Cochain:
    """(gᵏ∗φ)(G_I) = gᵏ(φ(g⁻ᵏ∗G_I)), computed slot by slot with ξ-coefficients."""
    if act.is_trivial or k % act.m == 0:
        return c
    values = tuple(act.twist(v, k, -c.W.weights[i]) for i, v in enumerate(c.values))
    return Cochain(c.W, c.e, values)


def average_cochain(c: Cochain, act: CyclicActionType) -> Cochain:
    """The explicit group average (1/m)Σ_k gᵏ∗c, coefficients in ℚ(ξ)."""
    if act.is_trivial:
        return c
    total = Cochain.zero(c.W, c.e)
    for k in range(act.m):
        total = total + act_on_cochain(k, c, act)
    return total.scale(Fraction(1, act.m))


def scalar_multiple(c: Cochain, t: XiWeight, act: CyclicActionType) -> Cochain:
    """ξᵗ·c, as a cochain with ξ-coefficients."""
    xi = XiScalar.monomial(act.m, t)
    return Cochain(c.W, c.e, tuple(v.map_coefficients(lambda _m, a: xi * a) for v in c.values))


# ============================================================
#  INVARIANT COHOMOLOGY
# ============================================================


def invariant_cohomology(cx: LieRinehartComplex, n: int, e: int,
                         galois_asserted: bool) -> Tuple[int, List[CohomologyClass]]:
    """dim of the weight-0 block of Hⁿ_e, with representatives.

    This is the cohomology of the quotient only under the Galois hypothesis,
    which is the caller's assertion.
    """
    if not galois_asserted:
        raise GaloisHypothesisError(
            "invariant cohomology is only identified with the cohomology of A^G when "
            "A^G ⊆ A is asserted to be Galois (unramified in codimension one); "
            "set galois_asserted"
        )
    return cx.cohomology(n, e, weight=0)


def class_weights(classes: Sequence[CohomologyClass], act: CyclicActionType) -> List[Optional[XiWeight]]:
    return [xi_weight_of_cochain(cl.representative, act) for cl in classes]


# ============================================================
#  PSEUDO-REFLECTIONS
# ============================================================


@dataclass
class PseudoReflectionReport:
    order: int
    dimension: int
    fixed_dimensions: Dict[int, int]
    pseudo_reflections: List[int]

    @property
    def clean(self) -> bool:
        return not self.pseudo_reflections


def pseudo_reflection_check(act: CyclicActionType) -> PseudoReflectionReport:
    """Fixed-space census of gᵏ = diag(ξ^{k mᵢ}) for each non-identity power."""
    n = len(act.exponents)
    fixed, flagged = {}, []
    for k in range(1, act.m):
        if all((k * e) % act.m == 0 for e in act.exponents):
            continue
        dim = sum(1 for e in act.exponents if (k * e) % act.m == 0)
        fixed[k] = dim
        if n - dim == 1:
            flagged.append(k)
    return PseudoReflectionReport(act.m, n, fixed, flagged)


def _matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def pseudo_reflections_of_matrix(M: Sequence[Sequence], max_order: int = 120) -> PseudoReflectionReport:
    """Census for the cyclic group generated by a finite-order rational matrix.

    fix(Mᵏ) = n − rank(Mᵏ − I); Mᵏ is a pseudo-reflection when that codimension is 1.
    """
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    power = A
    fixed, flagged = {}, []
    for k in range(1, max_order + 1):
        if power == ident:
            return PseudoReflectionReport(k, n, fixed, flagged)
        diff = QMatrix.from_rows([[power[i][j] - ident[i][j] for j in range(n)] for i in range(n)])
        dim = n - rank(diff)
        fixed[k] = dim
        if n - dim == 1:
            flagged.append(k)
        power = _matmul(power, A)
    raise ValueError(f"matrix has no finite order up to {max_order}")


@dataclass
class CorollaryReport:
    pseudo_reflections: PseudoReflectionReport
    expect_vanishing: bool
    note: str


def corollary_check(act: CyclicActionType) -> CorollaryReport:
    """Diagonal action on k[x1, x2]: without pseudo-reflections the invariant
    cohomology Hⁿ for n ≥ 1 is expected to vanish. Evidence only."""
    if len(act.exponents) != 2:
        raise ValueError("the polynomial-ring check is for actions on k[x1, x2]")
    census = pseudo_reflection_check(act)
    if census.clean:
        note = "no pseudo-reflections: k[x1,x2]^G ⊆ k[x1,x2] is Galois, expect H^n = 0 for n >= 1"
    else:
        note = f"pseudo-reflections at powers {census.pseudo_reflections}: the Galois hypothesis fails"
    return CorollaryReport(census, census.clean, note)
