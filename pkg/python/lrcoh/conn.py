"""Connections on rank-one modules, their curvature and cohomology classes.

A rank-one module is a homogeneous ideal M = (u_1..u_r) ⊆ A. Elements of M
are handled as coefficient vectors c with Σ c_j u_j; since M sits inside A,
two vectors are equal in M iff Σ c_j u_j agree in A. A connection is the
table Γ with ∇_{G_i}(u_j) = Σ_l Γ^{(i)}_{lj} u_l over the Der generators G_i,
extended to all of M by the Leibniz rule and to all of Der by A-linearity.
Endomorphisms of M are multiplications by elements of A (A normal), which is
how curvature and differences of connections become A-valued cochains.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .action import CyclicActionType, XiWeight
from .deriv import apply
from .equiv import reynolds, xi_weight_of_cochain
from .errors import InvalidConnectionError, NonIntegrableError, NotInSpanError, ScalarInconsistencyError
from .lrc import Cochain, LieRinehartComplex
from .presmod import WedgePresentation
from .qlinalg import QMatrix, RowSpace, kernel_basis, solve
from .wpoly import Poly, format_poly

logger = logging.getLogger(__name__)

Vector = Tuple[Poly, ...]


# ============================================================
#  MODULES
# ============================================================


class RankOneModule:
    """Homogeneous ideal generators u_j of A with degrees and ξ-weights μ_j."""

    def __init__(self, cx: LieRinehartComplex, generators: Sequence[Poly],
                 weights: Optional[Sequence[XiWeight]] = None):
        alg = cx.alg
        self.cx = cx
        self.alg = alg
        self.generators: Tuple[Poly, ...] = tuple(alg.normal_form(u) for u in generators)
        if not self.generators:
            raise ValueError("a module needs at least one generator")
        degrees = []
        for u in self.generators:
            if u.is_zero():
                raise ValueError("module generators must be non-zero in A")
            deg = u.homogeneous_degree(alg.weights)
            if deg is None:
                raise ValueError(f"module generator {format_poly(u)} is not homogeneous")
            degrees.append(deg)
        self.degrees: Tuple[int, ...] = tuple(degrees)
        act = cx.act
        if weights is None:
            ws = [act.poly_weight(u) for u in self.generators]
            if any(w is None for w in ws):
                raise ValueError("module generators are not ξ-homogeneous for the action")
            weights = ws
        self.weights: Tuple[XiWeight, ...] = tuple(w % act.m for w in weights)
        self._systems: Dict[int, tuple] = {}

    @property
    def act(self) -> CyclicActionType:
        return self.cx.act

    def __len__(self):
        return len(self.generators)

    def unit(self, j: int) -> Vector:
        nv = self.alg.nvars
        return tuple(Poly.one(nv) if l == j else Poly.zero(nv) for l in range(len(self)))

    def combine(self, vec: Sequence[Poly]) -> Poly:
        """Σ c_j u_j as an element of A."""
        total = Poly.zero(self.alg.nvars)
        for c, u in zip(vec, self.generators):
            if c:
                total = total + c * u
        return self.alg.normal_form(total)

    def _system(self, delta: int):
        if delta not in self._systems:
            alg = self.alg
            unknowns = [(l, mon) for l, d in enumerate(self.degrees) for mon in alg.graded_basis(delta - d)]
            columns = [alg.coordinates(alg.normal_form(Poly.monomial(mon) * self.generators[l]), delta)
                       for l, mon in unknowns]
            self._systems[delta] = (QMatrix.from_columns(columns, rows=alg.dim(delta)), unknowns)
        return self._systems[delta]

    def express(self, a: Poly) -> Vector:
        """Coefficients c with Σ c_j u_j = a; NotInSpanError if a ∉ M."""
        alg = self.alg
        nv = alg.nvars
        slots = [dict() for _ in self.generators]
        for delta, comp in alg.normal_form(a).homogeneous_components(alg.weights).items():
            M, unknowns = self._system(delta)
            b = [0] * M.rows
            for k, v in alg.coordinates(comp, delta).items():
                b[k] = v
            x = solve(M, b)
            if x is None:
                raise NotInSpanError(f"{format_poly(comp)} is not in the ideal")
            for (l, mon), c in zip(unknowns, x):
                if c:
                    slots[l][mon] = c
        return tuple(Poly(nv, s) for s in slots)


def module_syzygies(M: RankOneModule, bound: Optional[int] = None) -> List[Vector]:
    """Degreewise minimal homogeneous syzygies Σ s_j u_j = 0 up to degree ``bound``."""
    alg = M.alg
    if bound is None:
        bound = M.cx.bound + max(M.degrees)
    out: List[Tuple[int, Vector]] = []
    for delta in range(min(M.degrees), bound + 1):
        mat, unknowns = M._system(delta)
        kernel = kernel_basis(mat)
        if not kernel:
            continue
        position = {u: k for k, u in enumerate(unknowns)}
        space = RowSpace(len(unknowns))
        for deg, syz in out:
            for mon in alg.graded_basis(delta - deg):
                row = {}
                for l, c in enumerate(syz):
                    for cm, cv in alg.normal_form(c * Poly.monomial(mon)).terms.items():
                        row[position[(l, cm)]] = cv
                space.add(row)
        for v in kernel:
            if space.add({k: c for k, c in enumerate(v) if c}):
                slots = [dict() for _ in M.generators]
                for (l, mon), c in zip(unknowns, v):
                    if c:
                        slots[l][mon] = c
                out.append((delta, tuple(Poly(alg.nvars, s) for s in slots)))
    return [syz for _, syz in out]


# ============================================================
#  CONNECTIONS
# ============================================================


class Connection:
    """Γ[i][j][l]: ∇_{G_i}(u_j) = Σ_l Γ[i][j][l]·u_l."""

    def __init__(self, module: RankOneModule, gamma: Sequence[Sequence[Sequence[Poly]]]):
        k, r = len(module.cx.generators), len(module)
        if len(gamma) != k or any(len(row) != r for row in gamma) or any(
                len(col) != r for row in gamma for col in row):
            raise InvalidConnectionError([f"connection table must have shape {k} x {r} x {r}"])
        self.module = module
        alg = module.alg
        self.gamma: Tuple[Tuple[Vector, ...], ...] = tuple(
            tuple(tuple(alg.normal_form(g) for g in col) for col in row) for row in gamma
        )

    @property
    def cx(self) -> LieRinehartComplex:
        return self.module.cx

    def nabla(self, i: int, vec: Sequence[Poly]) -> Vector:
        """∇_{G_i}(Σ c_j u_j) = Σ_j G_i(c_j) u_j + c_j ∇_{G_i}(u_j), as a vector."""
        G = self.cx.generators[i]
        out = [apply(G, c) for c in vec]
        for j, c in enumerate(vec):
            if c:
                for l, g in enumerate(self.gamma[i][j]):
                    if g:
                        out[l] = out[l] + c * g
        alg = self.module.alg
        return tuple(alg.normal_form(v) for v in out)

    def value(self, i: int, j: int) -> Poly:
        return self.module.combine(self.gamma[i][j])

    def __eq__(self, other):
        return isinstance(other, Connection) and other.module is self.module and other.gamma == self.gamma

    def __hash__(self):
        return hash(self.gamma)

    def __repr__(self):
        return f"Connection({len(self.gamma)} generators x {len(self.module)} module generators)"


def trivial_connection(M: RankOneModule) -> Connection:
    """∇_D(u) = D(u), for A itself or a Der-stable ideal."""
    gamma = []
    for i, G in enumerate(M.cx.generators):
        row = []
        for j, u in enumerate(M.generators):
            try:
                row.append(M.express(apply(G, u)))
            except NotInSpanError:
                raise InvalidConnectionError(
                    [f"G_{i + 1}(u_{j + 1}) is not in the ideal: it is not stable under derivations"]
                )
        gamma.append(row)
    return Connection(M, gamma)


def twisted(conn: Connection, omega: Sequence[Poly]) -> Connection:
    """∇ + ω·id, with ω(G_i) given per Der generator."""
    M = conn.module
    if len(omega) != len(conn.gamma):
        raise InvalidConnectionError([f"one-form needs {len(conn.gamma)} values, got {len(omega)}"])
    gamma = []
    for i, row in enumerate(conn.gamma):
        gamma.append([
            [g + omega[i] if l == j else g for l, g in enumerate(col)]
            for j, col in enumerate(row)
        ])
    return Connection(M, gamma)


@dataclass
class ConnectionReport:
    valid: bool
    violations: List[str] = field(default_factory=list)
    module_syzygies: int = 0
    der_relations: int = 0


def verify_connection(conn: Connection, syzygy_bound: Optional[int] = None) -> ConnectionReport:
    """Leibniz rule on the module syzygies and A-linearity on the Der relations."""
    M, cx = conn.module, conn.cx
    violations = []
    syzygies = module_syzygies(M, syzygy_bound)
    for s_idx, syz in enumerate(syzygies):
        for i in range(len(cx.generators)):
            image = M.combine(conn.nabla(i, syz))
            if image:
                violations.append(
                    f"Leibniz: module syzygy #{s_idx + 1} "
                    f"({', '.join(format_poly(c) for c in syz)}) maps to {format_poly(image)} "
                    f"under the connection along G_{i + 1}"
                )
    relations = cx.P.relations
    for r_idx, rel in enumerate(relations):
        for j in range(len(M)):
            total = Poly.zero(M.alg.nvars)
            for (i,), c in rel.coefficients.items():
                total = total + c * conn.value(i, j)
            total = M.alg.normal_form(total)
            if total:
                violations.append(
                    f"A-linearity: Der relation #{r_idx + 1} (degree {rel.degree}) applied to "
                    f"u_{j + 1} gives {format_poly(total)} instead of 0"
                )
    for v in violations:
        logger.info("connection violation: %s", v)
    return ConnectionReport(not violations, violations, len(syzygies), len(relations))


def ensure_valid(conn: Connection) -> None:
    report = verify_connection(conn)
    if not report.valid:
        raise InvalidConnectionError(report.violations)


# ============================================================
#  ENDOMORPHISMS AND CURVATURE
# ============================================================


def endo_scalar(M: RankOneModule, images: Sequence[Poly]) -> Poly:
    """The q ∈ A with φ(u_j) = q·u_j for all j, given images[j] = φ(u_j) ∈ A.

    The cross-multiplication identities u_l·φ(u_j) = u_j·φ(u_l) are checked
    first; ScalarInconsistencyError when they fail or no such q exists.
    """
    alg = M.alg
    images = [alg.normal_form(p) for p in images]
    for l in range(len(M)):
        for j in range(l + 1, len(M)):
            cross = alg.normal_form(M.generators[l] * images[j] - M.generators[j] * images[l])
            if cross:
                raise ScalarInconsistencyError(
                    f"u_{l + 1}·φ(u_{j + 1}) ≠ u_{j + 1}·φ(u_{l + 1}): not multiplication by a scalar"
                )
    degrees = set()
    for img, d in zip(images, M.degrees):
        degrees |= {delta - d for delta in img.weighted_degrees(alg.weights)}
    q = Poly.zero(alg.nvars)
    for p in sorted(degrees):
        basis = alg.graded_basis(p)
        entries, rhs, row0 = {}, [], 0
        for img, u, d in zip(images, M.generators, M.degrees):
            target = p + d
            dim = alg.dim(target)
            for col, mon in enumerate(basis):
                for r, v in alg.coordinates(alg.normal_form(Poly.monomial(mon) * u), target).items():
                    entries[(row0 + r, col)] = v
            comp = img.restrict(lambda mon: sum(a * w for a, w in zip(mon, alg.weights)) == target)
            b = [Fraction(0)] * dim
            for r, v in alg.coordinates(comp, target).items():
                b[r] = v
            rhs.extend(b)
            row0 += dim
        x = solve(QMatrix(row0, len(basis), entries), rhs)
        if x is None:
            raise ScalarInconsistencyError(f"no scalar of degree {p} reproduces the endomorphism")
        q = q + alg.from_coordinates(p, {k: c for k, c in enumerate(x) if c})
    return q


def curvature_values(conn: Connection) -> Dict[Tuple[int, int], Tuple[Poly, ...]]:
    """R(G_a∧G_b)(u_j) ∈ A for every 2-wedge generator and module generator."""
    cx, M = conn.cx, conn.module
    out = {}
    for a, b in cx.wedge(2).generators:
        coeffs = cx.bracket_coefficients(a, b)
        images = []
        for j in range(len(M)):
            u = M.unit(j)
            vec = conn.nabla(a, conn.nabla(b, u))
            other = conn.nabla(b, conn.nabla(a, u))
            diff = [x - y for x, y in zip(vec, other)]
            for q, c in enumerate(coeffs):
                if c:
                    diff = [x - c * y for x, y in zip(diff, conn.nabla(q, u))]
            images.append(M.combine(diff))
        out[(a, b)] = tuple(images)
    return out


def _graded_cochains(W: WedgePresentation, values: Sequence[Poly]) -> Dict[int, Cochain]:
    """Split an inhomogeneous assignment into cochains of fixed internal degree."""
    alg = W.alg
    buckets: Dict[int, List[Poly]] = {}
    for k, v in enumerate(values):
        for delta, comp in v.homogeneous_components(alg.weights).items():
            e = delta - W.degrees[k]
            slot = buckets.setdefault(e, [Poly.zero(alg.nvars) for _ in values])
            slot[k] = comp
    return {e: Cochain(W, e, tuple(vals)) for e, vals in sorted(buckets.items())}


@dataclass
class Curvature:
    W: WedgePresentation
    values: Tuple[Poly, ...]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def components(self) -> Dict[int, Cochain]:
        return _graded_cochains(self.W, self.values)


def curvature(conn: Connection) -> Curvature:
    raw = curvature_values(conn)
    W = conn.cx.wedge(2)
    return Curvature(W, tuple(endo_scalar(conn.module, raw[I]) for I in W.generators))


def operator_sum_curvature(conn1: Connection, conn2: Connection,
                           tests: Optional[Sequence[Poly]] = None) -> Dict[Tuple[int, int], Tuple[Poly, ...]]:
    """R_S − R_1 − R_2 for the operator sum S = ∇_1 + ∇_2, on test elements a·u_j.

    S obeys S_D(am) = aS_D(m) + 2D(a)m, so its curvature is not A-linear and
    the differences are non-zero on generic test elements.
    """
    M, cx = conn1.module, conn1.cx
    nv = M.alg.nvars
    if tests is None:
        tests = [Poly.one(nv)] + [Poly.variable(i, nv) for i in range(nv)]

    def S(i, vec):
        return tuple(x + y for x, y in zip(conn1.nabla(i, vec), conn2.nabla(i, vec)))

    def R(op, a, b, vec):
        coeffs = cx.bracket_coefficients(a, b)
        out = [x - y for x, y in zip(op(a, op(b, vec)), op(b, op(a, vec)))]
        for q, c in enumerate(coeffs):
            if c:
                out = [x - c * y for x, y in zip(out, op(q, vec))]
        return M.combine(out)

    out = {}
    for a, b in cx.wedge(2).generators:
        diffs = []
        for j in range(len(M)):
            for t in tests:
                vec = tuple(t if l == j else Poly.zero(nv) for l in range(len(M)))
                d = R(S, a, b, vec) - R(conn1.nabla, a, b, vec) - R(conn2.nabla, a, b, vec)
                diffs.append(M.alg.normal_form(d))
        out[(a, b)] = tuple(diffs)
    return out


# ============================================================
#  CLASSES IN H¹ AND H²
# ============================================================


@dataclass
class ClassComponent:
    e: int
    cochain: Cochain
    is_cocycle: bool
    is_coboundary: bool
    coordinates: Optional[Tuple[Fraction, ...]]


@dataclass
class IntegrabilityClass:
    curvature: Curvature
    components: Dict[int, ClassComponent]
    equivariant: bool = False

    @property
    def integrable(self) -> bool:
        return self.curvature.is_zero()

    @property
    def zero(self) -> bool:
        return all(c.is_coboundary for c in self.components.values())


def _classify(cx: LieRinehartComplex, c: Cochain, equivariant: bool) -> ClassComponent:
    weight = None
    if equivariant:
        if xi_weight_of_cochain(c, cx.act) != 0:
            logger.warning("degree-%d component is not invariant; using its invariant part", c.e)
            c = reynolds(c, cx.act)
        weight = 0
    cocycle = cx.differential(c).is_zero()
    coboundary = cx.is_coboundary(c, weight)
    coords = None
    if cocycle:
        _, classes = cx.cohomology(c.n, c.e, weight)
        coords = cx.h_coordinates(c, classes, weight)
    return ClassComponent(c.e, c, cocycle, coboundary, coords)


def integrability_class(conn: Connection, equivariant: bool = False) -> IntegrabilityClass:
    """Class of the curvature in H², degree by degree (weight 0 when equivariant)."""
    R = curvature(conn)
    components = {e: _classify(conn.cx, c, equivariant) for e, c in R.components().items()}
    return IntegrabilityClass(R, components, equivariant)


# ============================================================
#  GROUP ACTION ON CONNECTIONS
# ============================================================


def act_on_connection(k: int, conn: Connection) -> Connection:
    """(gᵏ∗∇)_D(m) = gᵏ∇_{g⁻ᵏ∗D}(g⁻ᵏm); coefficients become ξ-combinations."""
    M = conn.module
    act = M.act
    if act.is_trivial or k % act.m == 0:
        return conn
    wts = conn.cx.gens.weights
    gamma = [
        [
            [act.twist(g, k, M.weights[l] - M.weights[j] - wts[i]) for l, g in enumerate(col)]
            for j, col in enumerate(row)
        ]
        for i, row in enumerate(conn.gamma)
    ]
    return Connection(M, gamma)


def act_on_curvature_values(k: int, values: Dict[Tuple[int, int], Tuple[Poly, ...]],
                            conn: Connection) -> Dict[Tuple[int, int], Tuple[Poly, ...]]:
    """gᵏ∗R: R(G_a∧G_b)(u_j) picks up ξ^{−k(wt_a + wt_b + μ_j)} after gᵏ acts on the value."""
    M = conn.module
    act = M.act
    wts = conn.cx.gens.weights
    return {
        (a, b): tuple(act.twist(v, k, -wts[a] - wts[b] - M.weights[j]) for j, v in enumerate(vals))
        for (a, b), vals in values.items()
    }


def is_invariant(conn: Connection) -> bool:
    return all(act_on_connection(k, conn) == conn for k in range(1, conn.module.act.m))


def average_connection(conn: Connection) -> Connection:
    """(1/|G|)Σ g∗∇: the Γ terms of total weight 0 survive."""
    M = conn.module
    act = M.act
    if act.is_trivial:
        return conn
    wts = conn.cx.gens.weights
    gamma = [
        [
            [g.restrict(lambda mon, s=M.weights[l] - M.weights[j] - wts[i]:
                        (act.monomial_weight(mon) + s) % act.m == 0)
             for l, g in enumerate(col)]
            for j, col in enumerate(row)
        ]
        for i, row in enumerate(conn.gamma)
    ]
    return Connection(M, gamma)


# ============================================================
#  MODULI OF INTEGRABLE CONNECTIONS
# ============================================================


@dataclass
class ModuliReport:
    omega: Tuple[Poly, ...]
    components: Dict[int, ClassComponent]
    equivariant: bool = False

    @property
    def is_cocycle(self) -> bool:
        return all(c.is_cocycle for c in self.components.values())

    @property
    def equivalent(self) -> bool:
        return all(c.is_coboundary for c in self.components.values())


def connection_difference(conn1: Connection, conn2: Connection) -> Tuple[Poly, ...]:
    """ω with ∇_1 − ∇_2 = ω·id, one value per Der generator."""
    M = conn1.module
    out = []
    for i in range(len(conn1.gamma)):
        images = [conn1.value(i, j) - conn2.value(i, j) for j in range(len(M))]
        out.append(endo_scalar(M, images))
    return tuple(out)


def moduli_class(conn1: Connection, conn2: Connection, equivariant: bool = False) -> ModuliReport:
    """H¹ class of ∇_1 − ∇_2 for two integrable connections on the same module."""
    for name, conn in (("first", conn1), ("second", conn2)):
        if not curvature(conn).is_zero():
            raise NonIntegrableError(f"the {name} connection has non-zero curvature")
    omega = connection_difference(conn1, conn2)
    W = conn1.cx.wedge(1)
    components = {e: _classify(conn1.cx, c, equivariant) for e, c in _graded_cochains(W, omega).items()}
    return ModuliReport(omega, components, equivariant)
