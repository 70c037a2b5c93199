"""The derivation module Der_k(A) of A = ℚ[x]/(f).

A derivation is stored as its coefficient tuple (a1, ..., an) in normal form,
D = Σ aᵢ∂ᵢ. Two tuples give the same derivation of A iff they agree in A, so
normal forms are canonical representatives. Tangency D(f) ∈ (f) is
normal_form(Σ aᵢ ∂f/∂xᵢ) == 0.
"""

import logging
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .action import CyclicActionType, XiWeight
from .errors import NotInSpanError
from .qlinalg import QMatrix, RowSpace, kernel_basis, solve
from .wpoly import Monomial, Poly, WeightedAlgebra

logger = logging.getLogger(__name__)


class Derivation:
    __slots__ = ("alg", "coefficients", "degree")

    def __init__(self, alg: WeightedAlgebra, coefficients: Sequence[Poly], check: bool = True):
        if len(coefficients) != alg.nvars:
            raise ValueError(f"expected {alg.nvars} coefficients, got {len(coefficients)}")
        self.alg = alg
        self.coefficients: Tuple[Poly, ...] = tuple(alg.normal_form(a) for a in coefficients)
        if check and not self.is_tangent():
            raise ValueError("coefficients do not define a derivation of A (D(f) not in (f))")
        degs = set()
        for a, di in zip(self.coefficients, alg.weights):
            degs |= {e - di for e in a.weighted_degrees(alg.weights)}
        self.degree: Optional[int] = degs.pop() if len(degs) == 1 else None

    @classmethod
    def zero(cls, alg: WeightedAlgebra) -> "Derivation":
        return cls(alg, [Poly.zero(alg.nvars)] * alg.nvars, check=False)

    def is_tangent(self) -> bool:
        total = Poly.zero(self.alg.nvars)
        for a, fi in zip(self.coefficients, self.alg.partials()):
            total = total + a * fi
        return self.alg.normal_form(total).is_zero()

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coefficients)

    @property
    def is_homogeneous(self) -> bool:
        return self.degree is not None or self.is_zero()

    def apply(self, p: Poly) -> Poly:
        return apply(self, p)

    def scale(self, p) -> "Derivation":
        return Derivation(self.alg, [p * a for a in self.coefficients], check=False)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.alg, [a + b for a, b in zip(self.coefficients, other.coefficients)], check=False)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.alg, [a - b for a, b in zip(self.coefficients, other.coefficients)], check=False)

    def __neg__(self) -> "Derivation":
        return Derivation(self.alg, [-a for a in self.coefficients], check=False)

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        terms = [f"({a!r})*d{i + 1}" for i, a in enumerate(self.coefficients) if a]
        return "Derivation(" + (" + ".join(terms) or "0") + ")"

    def weight(self, act: CyclicActionType) -> Optional[XiWeight]:
        """ξ-weight: x^α ∂ᵢ has weight Σαⱼmⱼ − mᵢ. None if mixed, 0 for zero."""
        ws = set()
        for a, mi in zip(self.coefficients, act.exponents):
            ws |= {(act.monomial_weight(mon) - mi) % act.m for mon in a.terms}
        if not ws:
            return 0
        return ws.pop() if len(ws) == 1 else None

    def bihomogeneous_components(self, act: CyclicActionType) -> Dict[Tuple[int, XiWeight], "Derivation"]:
        buckets: Dict[Tuple[int, int], List[Dict[Monomial, object]]] = {}
        n = self.alg.nvars
        for i, (a, di, mi) in enumerate(zip(self.coefficients, self.alg.weights, act.exponents)):
            for mon, c in a.terms.items():
                key = (sum(x * w for x, w in zip(mon, self.alg.weights)) - di,
                       (act.monomial_weight(mon) - mi) % act.m)
                buckets.setdefault(key, [dict() for _ in range(n)])[i][mon] = c
        return {
            key: Derivation(self.alg, [Poly(n, t) for t in slots], check=False)
            for key, slots in sorted(buckets.items())
        }


def apply(D: Derivation, p: Poly) -> Poly:
    """D(p) = normal form of Σ aᵢ ∂p/∂xᵢ."""
    total = Poly.zero(p.nvars)
    for i, a in enumerate(D.coefficients):
        if a:
            dp = p.diff(i)
            if dp:
                total = total + a * dp
    return D.alg.normal_form(total)


def bracket(D: Derivation, E: Derivation) -> Derivation:
    """[D, E] with coefficients D(bᵢ) − E(aᵢ)."""
    return Derivation(
        D.alg,
        [apply(D, b) - apply(E, a) for a, b in zip(D.coefficients, E.coefficients)],
        check=False,
    )


def euler(alg: WeightedAlgebra) -> Derivation:
    """Σ dᵢxᵢ∂ᵢ; acts on a homogeneous element of degree e as multiplication by e."""
    return Derivation(
        alg,
        [Poly.variable(i, alg.nvars) * di for i, di in enumerate(alg.weights)],
        check=False,
    )


def koszul_derivation(alg: WeightedAlgebra, i: int, j: int) -> Derivation:
    """fⱼ∂ᵢ − fᵢ∂ⱼ, of degree d − dᵢ − dⱼ."""
    fs = alg.partials()
    coeffs = [Poly.zero(alg.nvars)] * alg.nvars
    coeffs[i] = fs[j]
    coeffs[j] = -fs[i]
    return Derivation(alg, coeffs, check=False)


# ============================================================
#  DEGREEWISE COORDINATES
# ============================================================


class DerSlice:
    """Coordinates of derivations of internal degree e and ξ-weight t.

    The unknowns are pairs (i, x^α) with x^α a normal-form monomial of degree
    e + dᵢ and weight t + mᵢ.
    """

    def __init__(self, alg: WeightedAlgebra, e: int, act: CyclicActionType, weight: XiWeight):
        self.alg, self.e, self.act, self.weight = alg, e, act, weight
        self.unknowns: List[Tuple[int, Monomial]] = []
        for i, (di, mi) in enumerate(zip(alg.weights, act.exponents)):
            for mon in alg.graded_basis(e + di):
                if (act.monomial_weight(mon) - mi) % act.m == weight:
                    self.unknowns.append((i, mon))
        self.index = {u: k for k, u in enumerate(self.unknowns)}

    def __len__(self):
        return len(self.unknowns)

    def vector(self, D: Derivation) -> Dict[int, object]:
        out = {}
        for i, a in enumerate(D.coefficients):
            for mon, c in a.terms.items():
                try:
                    out[self.index[(i, mon)]] = c
                except KeyError:
                    raise ValueError(
                        f"derivation has a term outside degree {self.e}, weight {self.weight}"
                    )
        return out

    def derivation(self, vec: Sequence) -> Derivation:
        slots = [dict() for _ in range(self.alg.nvars)]
        for k, c in enumerate(vec):
            if c:
                i, mon = self.unknowns[k]
                slots[i][mon] = c
        return Derivation(self.alg, [Poly(self.alg.nvars, s) for s in slots], check=False)


def _der_slice(alg: WeightedAlgebra, e: int, act: CyclicActionType, weight: XiWeight) -> DerSlice:
    key = ("slice", e, act, weight)
    if key not in alg.der_cache:
        alg.der_cache[key] = DerSlice(alg, e, act, weight)
    return alg.der_cache[key]


def _der_graded_block(alg: WeightedAlgebra, e: int, act: CyclicActionType, weight: XiWeight) -> Tuple[Derivation, ...]:
    key = ("block", e, act, weight)
    if key not in alg.der_cache:
        alg.der_cache[key] = _tangent_kernel(alg, e, act, weight)
    return alg.der_cache[key]


def _tangent_kernel(alg: WeightedAlgebra, e: int, act: CyclicActionType, weight: XiWeight) -> Tuple[Derivation, ...]:
    sl = _der_slice(alg, e, act, weight)
    if not len(sl):
        return ()
    target = e + alg.degree
    fs = alg.partials()
    columns = []
    for i, mon in sl.unknowns:
        image = alg.normal_form(Poly.monomial(mon) * fs[i])
        columns.append(alg.coordinates(image, target))
    M = QMatrix.from_columns(columns, rows=alg.dim(target))
    return tuple(sl.derivation(v) for v in kernel_basis(M))


def der_graded_basis(alg: WeightedAlgebra, e: int, act: Optional[CyclicActionType] = None,
                     weight: Optional[XiWeight] = None) -> List[Derivation]:
    """A ℚ-basis of Der_k(A)_e, each element homogeneous for the ξ-weight too."""
    act = act or CyclicActionType.trivial(alg.nvars)
    weights = [weight % act.m] if weight is not None else list(act.weights())
    out: List[Derivation] = []
    for t in weights:
        out.extend(_der_graded_block(alg, e, act, t))
    return out


def min_derivation_degree(alg: WeightedAlgebra) -> int:
    return -max(alg.weights)


def der_generators(alg: WeightedAlgebra, bound: int, act: Optional[CyclicActionType] = None) -> List[Derivation]:
    """Greedy bi-homogeneous generators of Der_k(A) up to internal degree ``bound``.

    In each bidegree, basis vectors outside the A-span of the generators chosen
    so far are added. The Euler derivation is offered first in degree 0.
    """
    act = act or CyclicActionType.trivial(alg.nvars)
    gens: List[Derivation] = []
    meta: List[Tuple[int, XiWeight]] = []
    for e in range(min_derivation_degree(alg), bound + 1):
        for t in act.weights():
            basis = list(_der_graded_block(alg, e, act, t))
            if not basis:
                continue
            if e == 0 and t == 0:
                basis.insert(0, euler(alg))
            sl = _der_slice(alg, e, act, t)
            space = RowSpace(len(sl))
            for G, (w, s) in zip(gens, meta):
                for mon in alg.graded_basis(e - w):
                    if (act.monomial_weight(mon) + s) % act.m == t:
                        space.add(sl.vector(G.scale(Poly.monomial(mon))))
            for D in basis:
                if space.add(sl.vector(D)):
                    gens.append(D)
                    meta.append((e, t))
    logger.info("Der generators up to degree %d: degrees %s", bound, [w for w, _ in meta])
    return gens


# ============================================================
#  EXPRESSING DERIVATIONS IN GENERATORS
# ============================================================


class GeneratorSet:
    """Bi-homogeneous generators G_1..G_k with cached per-bidegree solvers."""

    def __init__(self, alg: WeightedAlgebra, gens: Sequence[Derivation], act: Optional[CyclicActionType] = None):
        self.alg = alg
        self.act = act or CyclicActionType.trivial(alg.nvars)
        self.gens: Tuple[Derivation, ...] = tuple(gens)
        self.degrees: Tuple[int, ...] = tuple(G.degree if G.degree is not None else 0 for G in self.gens)
        ws = []
        for G in self.gens:
            w = G.weight(self.act)
            if w is None or G.degree is None:
                raise ValueError(f"generator {G!r} is not bi-homogeneous")
            ws.append(w)
        self.weights: Tuple[XiWeight, ...] = tuple(ws)
        self._systems: Dict[Tuple[int, int], tuple] = {}

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __getitem__(self, i):
        return self.gens[i]

    def coefficient_unknowns(self, e: int, t: XiWeight) -> List[Tuple[int, Monomial]]:
        """(generator index, monomial) pairs of A-coefficients landing in bidegree (e, t)."""
        out = []
        for l, (w, s) in enumerate(zip(self.degrees, self.weights)):
            for mon in self.alg.graded_basis(e - w):
                if (self.act.monomial_weight(mon) + s) % self.act.m == t:
                    out.append((l, mon))
        return out

    def system(self, e: int, t: XiWeight):
        """(matrix, unknowns, slice) of the evaluation map (c_l) -> Σ c_l G_l in bidegree (e, t)."""
        key = (e, t)
        if key not in self._systems:
            sl = _der_slice(self.alg, e, self.act, t)
            unknowns = self.coefficient_unknowns(e, t)
            columns = [sl.vector(self.gens[l].scale(Poly.monomial(mon))) for l, mon in unknowns]
            M = QMatrix.from_columns(columns, rows=len(sl))
            self._systems[key] = (M, unknowns, sl)
        return self._systems[key]

    def syzygy_vectors(self, e: int, t: XiWeight):
        M, unknowns, _ = self.system(e, t)
        return kernel_basis(M), unknowns

    def coefficients_from_vector(self, vec: Sequence, unknowns) -> List[Poly]:
        n = self.alg.nvars
        slots = [dict() for _ in self.gens]
        for k, c in enumerate(vec):
            if c:
                l, mon = unknowns[k]
                slots[l][mon] = c
        return [Poly(n, s) for s in slots]

    def express(self, D: Derivation, rng: Optional[random.Random] = None) -> Tuple[Poly, ...]:
        """Coefficients c with Σ c_l G_l = D.

        With ``rng`` a random syzygy is added, giving a different valid
        expression (used to test that cochains are well defined).
        """
        n = self.alg.nvars
        total = [Poly.zero(n) for _ in self.gens]
        for (e, t), comp in D.bihomogeneous_components(self.act).items():
            M, unknowns, sl = self.system(e, t)
            b = [0] * len(sl)
            for k, c in sl.vector(comp).items():
                b[k] = c
            x = solve(M, b)
            if x is None:
                raise NotInSpanError(
                    f"derivation of degree {e}, weight {t} is not in the span of the "
                    f"{len(self.gens)} generators; raise the presentation bound"
                )
            if rng is not None:
                x = list(x)
                for v in kernel_basis(M):
                    r = rng.randint(-3, 3)
                    if r:
                        x = [a + r * b_ for a, b_ in zip(x, v)]
            for l, c in enumerate(self.coefficients_from_vector(x, unknowns)):
                total[l] = total[l] + c
        return tuple(total)

    def combine(self, coefficients: Sequence[Poly]) -> Derivation:
        out = Derivation.zero(self.alg)
        for c, G in zip(coefficients, self.gens):
            if c:
                out = out + G.scale(c)
        return out


def express_in_generators(D: Derivation, gens, act: Optional[CyclicActionType] = None) -> Tuple[Poly, ...]:
    if not isinstance(gens, GeneratorSet):
        gens = GeneratorSet(D.alg, gens, act)
    return gens.express(D)
