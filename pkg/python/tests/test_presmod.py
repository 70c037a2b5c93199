import gc
import weakref

from lrcoh.deriv import Derivation
from lrcoh.presmod import (
    build_presentation,
    cochain_dimension_drift,
    cochain_space,
    wedge_presentation,
    wedge_sign,
)


def test_wedge_sign():
    assert wedge_sign((0, 1, 2)) == (1, (0, 1, 2))
    assert wedge_sign((1, 0)) == (-1, (0, 1))
    assert wedge_sign((2, 0, 1)) == (1, (0, 1, 2))
    assert wedge_sign((1, 1)) == (0, None)


def test_relations_recombine_to_zero(cubic_cx, e8_cx):
    for cx in (cubic_cx, e8_cx):
        P = cx.P
        assert P.relations
        for rel in P.relations:
            total = Derivation.zero(cx.alg)
            for (l,), c in rel.coefficients.items():
                total = total + P.generators[l].scale(c)
            assert total.is_zero()


def test_relations_are_homogeneous(cubic_cx):
    P = cubic_cx.P
    for rel in P.relations:
        for (l,), c in rel.coefficients.items():
            assert c.homogeneous_degree(cubic_cx.alg.weights) == rel.degree - P.degrees[l]


def test_low_bound_keeps_low_relations_only(cubic):
    P = build_presentation(cubic, 1)
    assert P.relations == []
    P2 = build_presentation(cubic, 2)
    assert P2.relations and all(r.degree == 2 for r in P2.relations)


def test_cubic_wedge_generators(cubic_cx):
    W = wedge_presentation(cubic_cx.P, 2)
    assert len(W.generators) == 6
    assert all(I[0] < I[1] for I in W.generators)
    assert sorted(W.degrees) == [1, 1, 1, 2, 2, 2]


def test_wedge_relations_are_homogeneous(cubic_cx):
    W = wedge_presentation(cubic_cx.P, 2)
    for rel in W.relations:
        for I, c in rel.coefficients.items():
            assert c.homogeneous_degree(cubic_cx.alg.weights) == rel.degree - W.degrees[W.position[I]]


def test_degree_zero_cochains_are_the_algebra(cubic_cx):
    W = wedge_presentation(cubic_cx.P, 0)
    for e in range(-2, 5):
        assert cochain_space(W, e).dimension == cubic_cx.alg.dim(e)


def test_cochain_bases_satisfy_relations(cubic_cx):
    for n in (1, 2):
        for e in (-1, 0, 1, 2):
            for c in cubic_cx.basis_cochains(n, e):
                assert cubic_cx.satisfies_relations(c)


def test_top_wedge_has_no_cochains(cubic_cx, e8_cx):
    for e in range(-3, 4):
        assert cubic_cx.dimension(3, e) == 0
    for e in (-10, -1, 0, 5):
        assert e8_cx.dimension(3, e) == 0


def test_assignments_have_the_slot_degrees(cubic_cx):
    sp = cubic_cx.space(1, 1)
    for values in sp.assignments():
        for k, v in enumerate(values):
            if v:
                assert v.homogeneous_degree(cubic_cx.alg.weights) == sp.W.degrees[k] + 1


def test_no_dimension_drift_between_bounds(cubic):
    assert cochain_dimension_drift(cubic, None, 6, (-2, 2), max_n=3) == []


def test_weight_restricted_spaces_sum_to_total(cubic_z3_cx, z3):
    for n in (0, 1, 2):
        for e in (-1, 0, 1, 3):
            total = cubic_z3_cx.dimension(n, e)
            assert sum(cubic_z3_cx.dimension(n, e, t) for t in z3.weights()) == total


def test_cochain_spaces_do_not_outlive_their_presentation(cubic):
    P = build_presentation(cubic, 2)
    W = wedge_presentation(P, 1)
    first = cochain_space(W, 0)
    assert cochain_space(W, 0) is first
    assert (0, None) in W.spaces
    ref = weakref.ref(W)
    del W, first, P
    gc.collect()
    assert ref() is None
