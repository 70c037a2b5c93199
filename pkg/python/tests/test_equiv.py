import pytest

from lrcoh.action import CyclicActionType, XiScalar
from lrcoh.equiv import (
    act_on_cochain,
    average_cochain,
    check_action,
    class_weights,
    corollary_check,
    invariant_cohomology,
    pseudo_reflection_check,
    pseudo_reflections_of_matrix,
    reynolds,
    scalar_multiple,
    weight_split,
    xi_weight_of_cochain,
)
from lrcoh.errors import GaloisHypothesisError, IncompatibleActionError
from lrcoh.lrc import Cochain
from lrcoh.wpoly import Poly

x1 = Poly.variable(0)


def test_congruence_only_action(cubic, z3):
    report = check_action(cubic, z3)
    assert report.compatible
    assert not report.strict_equality
    assert sorted(report.sums.values()) == [3, 3, 6]
    assert report.exponent_shift == 1
    assert report.h_weight == 1
    assert report.degree_shift == 0
    assert len(report.warnings) == 1


def test_strict_action(cubic):
    report = check_action(cubic, CyclicActionType(3, (1, 1, 1)))
    assert report.strict_equality
    assert report.exponent_shift == 0
    assert report.warnings == []


def test_incompatible_action(cubic):
    with pytest.raises(IncompatibleActionError) as info:
        check_action(cubic, CyclicActionType(2, (1, 0, 0)))
    assert info.value.offending == [(3, 0, 0)]


def test_xi_scalars_compare_in_the_cyclotomic_field():
    m = 3
    xi = XiScalar.monomial(m, 1)
    assert xi * xi * xi == 1
    assert 1 + xi + xi * xi == 0
    assert not (1 + xi + xi * xi)
    assert xi != 1
    assert XiScalar.scalar(m, 5).rational_value() == 5


def test_weight_of_a_slot(cubic_z3_cx, z3):
    W = cubic_z3_cx.wedge(1)
    zero = Poly.zero()
    c = Cochain(W, 1, (x1,) + (zero,) * (len(W.generators) - 1))
    # Euler is the first generator and has weight 0
    assert xi_weight_of_cochain(c, z3) == 1
    assert xi_weight_of_cochain(Cochain.zero(W, 1), z3) == 0


def test_weight_blocks_split_the_space(cubic_z3_cx, z3):
    blocks = weight_split(cubic_z3_cx.space(0, 3), z3)
    assert sum(b.dimension for b in blocks.values()) == 9
    for n in (1, 2):
        total = cubic_z3_cx.space(n, 1)
        assert sum(b.dimension for b in weight_split(total, z3).values()) == total.dimension


def test_reynolds_is_the_group_average(cubic_z3_cx, z3, rng):
    for n, e in ((0, 2), (1, 0), (1, 1), (2, 0)):
        c = cubic_z3_cx.random_cochain(n, e, rng)
        r = reynolds(c, z3)
        assert reynolds(r, z3) == r
        assert xi_weight_of_cochain(r, z3) == 0
        assert average_cochain(c, z3) == r


def test_group_acts_by_the_weight(cubic_z3_cx, z3):
    for t in z3.weights():
        for b in cubic_z3_cx.basis_cochains(1, 1, t):
            assert xi_weight_of_cochain(b, z3) == t
            assert act_on_cochain(1, b, z3) == scalar_multiple(b, t, z3)


@pytest.mark.parametrize("e", range(-3, 4))
def test_differential_is_equivariant(cubic_z3_cx, z3, rng, e):
    for n in (0, 1):
        for _ in range(20):
            c = cubic_z3_cx.random_cochain(n, e, rng)
            dc = cubic_z3_cx.differential(c)
            for k in (1, 2):
                assert act_on_cochain(k, dc, z3) == cubic_z3_cx.differential(act_on_cochain(k, c, z3))


def test_cohomology_classes_carry_the_shift_weight(cubic_z3_cx, z3):
    for n in (1, 2):
        dims = {t: cubic_z3_cx.cohomology_dimension(n, 0, t) for t in z3.weights()}
        assert dims == {0: 0, 1: 1, 2: 0}
        _, classes = cubic_z3_cx.cohomology(n, 0, weight=1)
        assert class_weights(classes, z3) == [1]


def test_invariant_cohomology(cubic_z3_cx):
    assert invariant_cohomology(cubic_z3_cx, 0, 0, True)[0] == 1
    for n in (1, 2):
        for e in range(-6, 7):
            assert invariant_cohomology(cubic_z3_cx, n, e, True)[0] == 0


def test_invariant_cohomology_needs_the_galois_flag(cubic_z3_cx):
    with pytest.raises(GaloisHypothesisError):
        invariant_cohomology(cubic_z3_cx, 1, 0, False)


def test_diagonal_pseudo_reflection_census():
    report = pseudo_reflection_check(CyclicActionType(3, (1, 1, 2)))
    assert report.clean
    assert report.fixed_dimensions == {1: 0, 2: 0}
    flagged = pseudo_reflection_check(CyclicActionType(2, (1, 0)))
    assert flagged.pseudo_reflections == [1]


def test_matrix_pseudo_reflection_census():
    rotation = pseudo_reflections_of_matrix([[0, -1], [1, 0]])
    assert rotation.order == 4
    assert rotation.clean
    reflection = pseudo_reflections_of_matrix([[1, 0], [0, -1]])
    assert reflection.order == 2
    assert reflection.pseudo_reflections == [1]
    with pytest.raises(ValueError):
        pseudo_reflections_of_matrix([[1, 1], [0, 1]], max_order=12)


def test_polynomial_ring_corollary():
    assert corollary_check(CyclicActionType(3, (1, 2))).expect_vanishing
    assert not corollary_check(CyclicActionType(2, (1, 0))).expect_vanishing
    with pytest.raises(ValueError):
        corollary_check(CyclicActionType(3, (1, 1, 2)))
