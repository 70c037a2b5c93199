from fractions import Fraction

import pytest

from lrcoh.errors import NotHomogeneousError, PolyParseError
from lrcoh.wpoly import (
    Poly,
    WeightedAlgebra,
    WeightSystem,
    format_poly,
    hilbert_series,
    parse_poly,
    weighted_degree,
)

x1, x2, x3 = (Poly.variable(i) for i in range(3))


def test_parse_sum_of_cubes():
    assert parse_poly("x1^3 + x2^3 + x3^3") == x1 ** 3 + x2 ** 3 + x3 ** 3


def test_parse_precedence_and_signs():
    assert parse_poly("-x1*x2 + 2*x3^2") == -(x1 * x2) + x3 * x3 * 2
    assert parse_poly("(x1 + x2)^2") == x1 * x1 + x1 * x2 * 2 + x2 * x2
    assert parse_poly("x1^2^3") == x1 ** 8
    assert parse_poly("x1 - x2 - x3") == x1 - x2 - x3


def test_parse_rational_coefficients():
    p = parse_poly("x1/2 + 3/4*x2")
    assert p.coefficient((1, 0, 0)) == Fraction(1, 2)
    assert p.coefficient((0, 1, 0)) == Fraction(3, 4)


@pytest.mark.parametrize("text", ["x1 +", "2 x1", "x1^x2", "x1/x2", "(x1", "y1 + x2", "x1/0"])
def test_parse_errors(text):
    with pytest.raises(PolyParseError):
        parse_poly(text)


def test_unknown_identifier_has_position():
    with pytest.raises(PolyParseError) as info:
        parse_poly("x1 + y7")
    assert info.value.position == 5


def test_custom_variables():
    p = parse_poly("x^2 + y*z", ["x", "y", "z"])
    assert p == x1 * x1 + x2 * x3


def test_format_then_parse():
    for text in ["x1^3 + x2^3 + x3^3", "-3/2*x1*x2 + x3", "7", "x1^2*x3 - x2"]:
        p = parse_poly(text)
        assert parse_poly(format_poly(p)) == p
    assert format_poly(Poly.zero()) == "0"


def test_homogeneity_enforced():
    with pytest.raises(NotHomogeneousError) as info:
        WeightedAlgebra(parse_poly("x1^3 + x2^2"), WeightSystem(3, (1, 1, 1)))
    assert info.value.offending == [(0, 2, 0)]


def test_normal_form_of_cubic(cubic):
    assert cubic.normal_form(x1 ** 3) == -(x2 ** 3) - x3 ** 3
    assert cubic.normal_form(cubic.f).is_zero()
    p = cubic.normal_form(x1 ** 4 * x2)
    assert all(mon[0] < 3 for mon in p.terms)
    assert cubic.normal_form(p) == p


def test_graded_dimensions_follow_hilbert_series(cubic, e8):
    for alg in (cubic, e8):
        series = hilbert_series(alg.ws, 40)
        assert [alg.dim(e) for e in range(41)] == series
    assert hilbert_series(cubic.ws, 5) == [1, 3, 6, 9, 12, 15]


def test_negative_degrees_are_empty(cubic):
    assert cubic.dim(-1) == 0
    assert cubic.graded_basis(-3) == ()


def test_homogeneous_components():
    p = parse_poly("x1 + x2^2 + x3^2 + 5")
    comps = p.homogeneous_components((1, 1, 1))
    assert sorted(comps) == [0, 1, 2]
    assert comps[2] == x2 * x2 + x3 * x3


def test_coordinates_round_trip(cubic):
    p = cubic.normal_form(parse_poly("x1^2*x2 - 4*x3^3 + x1*x2*x3"))
    coords = cubic.coordinates(p, 3)
    assert cubic.from_coordinates(3, coords) == p


def test_weight_shift(cubic, e8):
    assert cubic.ws.shift == 0
    assert e8.ws.shift == -1


def random_ring_poly(rng, terms=5, top=5):
    p = Poly.zero()
    for _ in range(terms):
        mon = tuple(rng.randint(0, top) for _ in range(3))
        p = p + Poly.monomial(mon, Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
    return p


def test_normal_form_is_additive_and_multiplicative(cubic, e8, rng):
    for alg in (cubic, e8):
        for _ in range(20):
            p, q = random_ring_poly(rng), random_ring_poly(rng)
            assert alg.normal_form(p + q) == alg.normal_form(p) + alg.normal_form(q)
            assert alg.normal_form(p * q) == alg.normal_form(alg.normal_form(p) * alg.normal_form(q))
            assert alg.normal_form(p * alg.f).is_zero()


def test_weighted_degree_is_additive(rng):
    for weights in ((1, 1, 1), (15, 10, 6), (3, 2, 1)):
        for _ in range(20):
            a = tuple(rng.randint(0, 6) for _ in range(3))
            b = tuple(rng.randint(0, 6) for _ in range(3))
            ab = tuple(x + y for x, y in zip(a, b))
            assert weighted_degree(ab, weights) == weighted_degree(a, weights) + weighted_degree(b, weights)
            p = Poly.monomial(a) * Poly.monomial(b)
            assert p.homogeneous_degree(weights) == weighted_degree(ab, weights)
