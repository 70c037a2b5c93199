import gc
import weakref
from itertools import product

import pytest
import sympy

from lrcoh.deriv import (
    Derivation,
    GeneratorSet,
    apply,
    bracket,
    der_generators,
    der_graded_basis,
    euler,
    express_in_generators,
    koszul_derivation,
)
from lrcoh.errors import NotInSpanError
from lrcoh.wpoly import Poly, WeightedAlgebra, WeightSystem, parse_poly

CUBIC = "x1^3 + x2^3 + x3^3"
E8 = "x1^2 + x2^3 + x3^5"


def test_euler_scales_homogeneous_elements(cubic, e8):
    for alg in (cubic, e8):
        E = euler(alg)
        for e in (1, 2, 5):
            for mon in alg.graded_basis(e):
                p = Poly.monomial(mon)
                assert apply(E, p) == p * e


def test_derivations_kill_constants(cubic):
    for G in der_generators(cubic, 3):
        assert apply(G, Poly.one()).is_zero()


def test_leibniz(cubic, rng):
    D = koszul_derivation(cubic, 0, 2)
    a = cubic.normal_form(parse_poly("x1*x2 + 3*x3^2"))
    b = cubic.normal_form(parse_poly("x2^2 - x1"))
    assert apply(D, a * b) == cubic.normal_form(a * apply(D, b) + b * apply(D, a))


def test_tangency_is_checked(cubic):
    x1 = Poly.variable(0)
    with pytest.raises(ValueError):
        Derivation(cubic, [x1, Poly.zero(), Poly.zero()])


def test_koszul_fields_are_tangent(cubic, e8):
    for alg in (cubic, e8):
        for i in range(3):
            for j in range(i + 1, 3):
                assert koszul_derivation(alg, i, j).is_tangent()


def test_cubic_degree_zero_is_euler_only(cubic):
    basis = der_graded_basis(cubic, 0)
    assert len(basis) == 1
    assert der_graded_basis(cubic, -1) == []


def test_cubic_generator_degrees(cubic):
    gens = der_generators(cubic, 6)
    assert [G.degree for G in gens] == [0, 1, 1, 1]
    assert gens[0] == euler(cubic)


def test_e8_generator_degrees(e8):
    gens = der_generators(e8, 60)
    assert sorted(G.degree for G in gens) == [0, 5, 9, 14]


def test_generators_are_bihomogeneous(cubic, z3):
    gens = der_generators(cubic, 6, z3)
    gs = GeneratorSet(cubic, gens, z3)
    assert len(gs) == 4
    assert all(G.is_homogeneous and G.weight(z3) is not None for G in gens)


def test_bracket_is_tangent_and_expressible(cubic):
    gens = GeneratorSet(cubic, der_generators(cubic, 6))
    for a in range(len(gens)):
        for b in range(len(gens)):
            B = bracket(gens[a], gens[b])
            assert B.is_tangent()
            coeffs = gens.express(B)
            assert gens.combine(coeffs) == B


def test_koszul_fields_expressed_in_generators(cubic, e8):
    for alg, bound in ((cubic, 6), (e8, 60)):
        gens = der_generators(alg, bound)
        theta = koszul_derivation(alg, 0, 1)
        coeffs = express_in_generators(theta, gens)
        assert GeneratorSet(alg, gens).combine(coeffs) == theta


def test_alternative_expressions_agree(cubic, rng):
    gens = GeneratorSet(cubic, der_generators(cubic, 6))
    D = koszul_derivation(cubic, 1, 2).scale(parse_poly("x1^2 + x2*x3"))
    for _ in range(5):
        assert gens.combine(gens.express(D, rng)) == D


def test_not_in_span_when_bound_too_small(cubic):
    gens = GeneratorSet(cubic, der_generators(cubic, 0))
    with pytest.raises(NotInSpanError):
        gens.express(koszul_derivation(cubic, 0, 1))


def test_bracket_degrees_add(cubic):
    E = euler(cubic)
    T = koszul_derivation(cubic, 0, 1)
    # [E, T] = deg(T)·T
    assert bracket(E, T) == T.scale(Poly.one() * T.degree)


# ---------- randomized bracket and Leibniz checks ----------

SCALING_DEGREES = {"cubic": (0, 1, 2), "e8": (0, 6, 10, 15)}


def random_element(alg, e, rng):
    p = Poly.zero(alg.nvars)
    for mon in alg.graded_basis(e):
        p = p + Poly.monomial(mon) * rng.randint(-3, 3)
    return p


def random_derivation(alg, gens, degrees, rng):
    a = random_element(alg, rng.choice(degrees), rng)
    return rng.choice(gens).scale(a)


@pytest.fixture(params=["cubic", "e8"])
def algebra_case(request):
    alg = request.getfixturevalue(request.param)
    bound = 6 if request.param == "cubic" else 60
    return alg, der_generators(alg, bound), SCALING_DEGREES[request.param]


def test_bracket_is_antisymmetric(algebra_case, rng):
    alg, gens, degrees = algebra_case
    for _ in range(20):
        D = random_derivation(alg, gens, degrees, rng)
        E = random_derivation(alg, gens, degrees, rng)
        assert bracket(D, E) == -bracket(E, D)
        assert bracket(D, D).is_zero()


def test_jacobi_identity(algebra_case, rng):
    alg, gens, degrees = algebra_case
    for _ in range(20):
        D, E, F = (random_derivation(alg, gens, degrees, rng) for _ in range(3))
        total = bracket(D, bracket(E, F)) + bracket(E, bracket(F, D)) + bracket(F, bracket(D, E))
        assert total.is_zero()


def test_leibniz_on_random_elements(algebra_case, rng):
    alg, gens, degrees = algebra_case
    for _ in range(20):
        D = random_derivation(alg, gens, degrees, rng)
        a = random_element(alg, rng.choice(degrees[1:]), rng)
        b = random_element(alg, rng.choice(degrees[1:]), rng)
        assert apply(D, alg.normal_form(a * b)) == alg.normal_form(a * apply(D, b) + b * apply(D, a))


# ---------- graded pieces against a dense model in the polynomial ring ----------

X = sympy.symbols("x1 x2 x3")


def ring_monomials(weights, k):
    if k < 0:
        return []
    ranges = [range(k // w + 1) for w in weights]
    return [a for a in product(*ranges) if sum(x * w for x, w in zip(a, weights)) == k]


def dense_der_dimension(text, degree, weights, e):
    """dim {a : Σ aᵢ ∂f/∂xᵢ ∈ (f)} / f·S³ in degree e, with S = ℚ[x1, x2, x3]."""
    f = sympy.sympify(text.replace("^", "**"))
    partials = [sympy.diff(f, x) for x in X]

    def mono(a):
        return sympy.Mul(*[x ** k for x, k in zip(X, a)])

    columns = [sympy.expand(mono(a) * fi) for fi, w in zip(partials, weights)
               for a in ring_monomials(weights, e + w)]
    columns += [sympy.expand(-mono(a) * f) for a in ring_monomials(weights, e)]
    rows = ring_monomials(weights, e + degree)
    if not columns:
        return 0
    coeffs = [sympy.Poly(c, *X).as_dict() if c != 0 else {} for c in columns]
    rk = 0
    if rows:
        rk = sympy.Matrix(len(rows), len(columns), lambda r, c: coeffs[c].get(rows[r], 0)).rank()
    trivial = sum(len(ring_monomials(weights, e + w - degree)) for w in weights)
    return len(columns) - rk - trivial


@pytest.mark.parametrize("e", range(-2, 5))
def test_cubic_graded_pieces_match_dense_kernel(cubic, e):
    assert len(der_graded_basis(cubic, e)) == dense_der_dimension(CUBIC, 3, (1, 1, 1), e)


@pytest.mark.parametrize("e", [-2, 0, 4, 5, 9, 14])
def test_e8_graded_pieces_match_dense_kernel(e8, e):
    assert len(der_graded_basis(e8, e)) == dense_der_dimension(E8, 30, (15, 10, 6), e)


def test_cubic_degree_one_contains_the_koszul_fields(cubic):
    x1, x2, x3 = (Poly.variable(i) for i in range(3))
    zero = Poly.zero()
    fields = [
        Derivation(cubic, [x2 ** 2, -(x1 ** 2), zero]),
        Derivation(cubic, [x3 ** 2, zero, -(x1 ** 2)]),
        Derivation(cubic, [zero, x3 ** 2, -(x2 ** 2)]),
    ]
    basis = der_graded_basis(cubic, 1)
    assert len(basis) == 6

    def entries(D):
        return {(i, mon): c for i, a in enumerate(D.coefficients) for mon, c in a.terms.items()}

    keys = sorted({k for D in basis + fields for k in entries(D)})

    def matrix(ds):
        return sympy.Matrix([[sympy.Rational(str(entries(D).get(k, 0))) for k in keys] for D in ds])

    assert matrix(basis).rank() == matrix(basis + fields).rank() == 6


def test_derivation_data_lives_on_the_algebra():
    alg = WeightedAlgebra(parse_poly(CUBIC), WeightSystem(3, (1, 1, 1)))
    twin = WeightedAlgebra(parse_poly(CUBIC), WeightSystem(3, (1, 1, 1)))
    assert len(der_graded_basis(alg, 1)) == 6
    assert alg.der_cache and not twin.der_cache
    ref = weakref.ref(alg)
    del alg
    gc.collect()
    assert ref() is None
