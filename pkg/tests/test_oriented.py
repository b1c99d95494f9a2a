import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterexp.laurent import LaurentPolynomial, parse_polynomial
from clusterexp.oriented import (
    WeightMatrix,
    band_trace,
    chain,
    compose,
    mat_D,
    mat_U,
    matrix_weight_polynomial,
    shape_to_matrix,
    source_loop,
    tail_flip,
    target_loop,
)
from clusterexp.poset import Band, BothLoops, LabeledPoset, ShapeSpec, SourceLoop, TargetLoop, enumerate_ideals, poset_from_shape, weight_polynomial

from conftest import expected, shape
from test_poset import random_shape

P = parse_polynomial


def w(i):
    return P(f"w{i}")


def entries(m: WeightMatrix):
    return [LaurentPolynomial.coerce(e) for e in (m.a, m.b, m.c, m.d)]


def test_single_vertex_matrices():
    assert entries(mat_D(w(1))) == [P("1+w1"), P("-w1"), P("1"), P("0")]
    assert entries(mat_U(w(1))) == [P("w1"), P("1"), P("0"), P("1")]
    assert (mat_D(1).a, mat_D(1).b, mat_D(1).c, mat_D(1).d) == (2, -1, 1, 0)
    assert (mat_U(1).a, mat_U(1).b, mat_U(1).c, mat_U(1).d) == (1, 1, 0, 1)


def test_single_vertex_entries_from_definitions():
    # ideals of one vertex are {} and {v}
    P1 = LabeledPoset(1, [])
    full = weight_polynomial(P1)
    assert full == P("1+w1") == mat_D(w(1)).a
    assert len(enumerate_ideals(P1)) == 2


def test_fence_1_2_down_matrix(  ):
    m = mat_U(w(1)) @ mat_D(w(2)) @ mat_D(w(3)) @ mat_D(w(4))
    assert m.tail == "D"
    assert entries(m) == [
        P("1+w1+w4+w1*w4+w3*w4+w1*w3*w4+w1*w2*w3*w4"),
        P("-w4-w1*w4-w3*w4-w1*w3*w4-w1*w2*w3*w4"),
        P("1+w4+w3*w4"),
        P("-w4-w3*w4"),
    ]


def test_fence_1_2_up_matrix():
    m = mat_U(w(1)) @ mat_D(w(2)) @ mat_D(w(3)) @ mat_U(w(4))
    assert m.tail == "U"
    assert entries(m) == [
        P("w4+w1*w4+w3*w4+w1*w3*w4+w1*w2*w3*w4"),
        P("1+w1"),
        P("w4+w3*w4"),
        P("1"),
    ]
    assert LaurentPolynomial.coerce(m.a + m.b) == P("1+w1+w4+w1*w4+w3*w4+w1*w3*w4+w1*w2*w3*w4")


def test_fence_1_2_shape():
    spec = shape("fence_1_2.json")
    assert spec.steps == "UDD"
    m = shape_to_matrix(spec)
    assert entries(m)[0] == P("1+w1+w4+w1*w4+w3*w4+w1*w3*w4+w1*w2*w3*w4")
    assert matrix_weight_polynomial(spec) == m.a


def test_flip():
    assert entries(tail_flip(mat_D(w(1)))) == entries(mat_U(w(1)))
    assert tail_flip(mat_D(w(1))).tail == "U"
    assert entries(tail_flip(mat_U(w(1)))) == entries(mat_D(w(1)))


def test_identity_and_chain():
    m = mat_U(w(1)) @ mat_D(w(2))
    ident = WeightMatrix(1, 0, 0, 1, m.tail)
    assert entries(compose(m, ident)) == entries(m)
    assert LaurentPolynomial.coerce(chain([w(2), w(3), w(4)], "DD", "D").a) == P("1+w4+w3*w4+w2*w3*w4")


def test_band_trace_examples():
    m = mat_U(w(1)) @ mat_D(w(2)) @ mat_D(w(3)) @ mat_D(w(4)) @ mat_U(w(5))
    assert band_trace(m) == expected("band_weight")
    assert band_trace(mat_D(w(1))) == P("1+w1")
    assert matrix_weight_polynomial(ShapeSpec(5, "UDDD", Band("U"))) == expected("band_weight")


def test_source_loop_examples():
    m = source_loop(mat_D(w(1)) @ mat_D(w(2)) @ mat_U(w(3)) @ mat_U(w(4)))
    assert m.a == P("1+w3+w2*w3+w3*w4+w2*w3*w4+w1*w2*w3*w4")
    # oracle: 1>2>3<4 with 4 below 1
    cyc = LabeledPoset.from_relations(4, [(2, 1), (3, 2), (3, 4), (4, 1)])
    assert m.a == weight_polynomial(cyc)
    assert entries(source_loop(mat_U(w(1)))) == entries(mat_D(w(1)))
    s3 = m @ mat_U(w(5)) @ mat_D(w(6))
    assert s3.a == expected("single_weight")


def test_target_loop_examples():
    assert entries(target_loop(mat_D(w(1)))) == entries(mat_D(w(1)))
    s2 = source_loop(mat_D(w(1)) @ mat_D(w(2)) @ mat_U(w(3)) @ mat_U(w(4)))
    s4 = target_loop(mat_D(w(6)) @ mat_U(w(7)) @ mat_U(w(8)) @ mat_D(w(9)))
    assert (s2 @ mat_U(w(5)) @ s4).a == expected("double2_weight")
    # closing 1 > 2 with 2 below 1 changes nothing; with 2 above 1 it glues them
    assert target_loop(mat_D(w(1)) @ mat_U(w(2))).a == weight_polynomial(LabeledPoset(2, [(2, 1)]))
    assert target_loop(mat_D(w(1)) @ mat_D(w(2))).a == P("1+w1*w2")


def test_shape_examples():
    assert matrix_weight_polynomial(shape("single_notched.json")) != expected("single_weight")  # labeled
    single = ShapeSpec(6, "DDUDU", SourceLoop(4, "U"))
    assert matrix_weight_polynomial(single) == expected("single_weight")
    double2 = shape("double_notched_two_loops.json")
    assert matrix_weight_polynomial(double2) == expected("double2_weight")
    double1 = ShapeSpec(6, "DDUDU", BothLoops(4, "U", 4, "D"))
    assert matrix_weight_polynomial(double1) == expected("double1_weight")
    one = shape_to_matrix(ShapeSpec(1, ""))
    assert entries(one) == entries(mat_D(w(1)))


def test_integer_weights_stay_integers():
    spec = ShapeSpec(4, "UDU", weights=(1, 2, 3, 4))
    m = shape_to_matrix(spec)
    assert all(isinstance(e, int) for e in (m.a, m.b, m.c, m.d))
    sym = matrix_weight_polynomial(ShapeSpec(4, "UDU"))
    assert matrix_weight_polynomial(spec) == sym.substitute_w({1: 1, 2: 2, 3: 3, 4: 4})


# property tests ---------------------------------------------------------

def _constrained(P, need_in=(), need_out=()):
    """Sum of ideal weights with the given membership constraints."""
    acc = LaurentPolynomial()
    for I in enumerate_ideals(P):
        if all(v in I for v in need_in) and not any(v in I for v in need_out):
            m = LaurentPolynomial.constant(1)
            for v in I:
                m = m * P.weights[v - 1]
            acc = acc + m
    return acc


@settings(max_examples=120, deadline=None)
@given(st.text("UD", min_size=0, max_size=9), st.sampled_from("UD"))
def test_fence_entries_match_constrained_sums(steps, tail):
    n = len(steps) + 1
    ws = [w(i) for i in range(1, n + 1)]
    m = chain(ws, steps, tail)
    Pn = poset_from_shape(ShapeSpec(n, steps))
    W = _constrained(Pn)
    if tail == "D":
        assert m.a == W
        assert LaurentPolynomial.coerce(m.b) == -_constrained(Pn, need_in=[n])
        assert LaurentPolynomial.coerce(m.c) == _constrained(Pn, need_out=[1])
        assert LaurentPolynomial.coerce(m.d) == -_constrained(Pn, need_in=[n], need_out=[1])
        assert m.a - m.c == _constrained(Pn, need_in=[1])
        assert all(c <= 0 for c in LaurentPolynomial.coerce(m.b).coefficients())
    else:
        assert LaurentPolynomial.coerce(m.a) == _constrained(Pn, need_in=[n])
        assert LaurentPolynomial.coerce(m.b) == _constrained(Pn, need_out=[n])
        assert LaurentPolynomial.coerce(m.c) == _constrained(Pn, need_in=[n], need_out=[1])
        assert LaurentPolynomial.coerce(m.d) == _constrained(Pn, need_out=[n, 1])
        assert m.a + m.b == W


@settings(max_examples=200, deadline=None)
@given(st.text("UD", min_size=0, max_size=11), st.sampled_from("UD"))
def test_det_is_product_of_weights(steps, tail):
    n = len(steps) + 1
    m = chain([w(i) for i in range(1, n + 1)], steps, tail)
    prod = LaurentPolynomial.constant(1)
    for i in range(1, n + 1):
        prod = prod * w(i)
    assert LaurentPolynomial.coerce(m.det()) == prod


@settings(max_examples=150, deadline=None)
@given(st.text("UD", min_size=0, max_size=9), st.sampled_from("UD"), st.integers(0, 9))
def test_band_trace_is_rotation_invariant(steps, last, k):
    n = len(steps) + 1
    word = steps + last
    ws = [w(i) for i in range(1, n + 1)]
    k %= n
    base = band_trace(chain(ws, steps, last))
    rw = word[k:] + word[:k]
    rot = band_trace(chain(ws[k:] + ws[:k], rw[:-1], rw[-1]))
    assert LaurentPolynomial.coerce(base) == LaurentPolynomial.coerce(rot)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.sampled_from("UD"))
def test_flip_is_an_involution(vals, tail):
    m = WeightMatrix(*vals, tail)
    assert tail_flip(tail_flip(m)) == m


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_matrix_matches_ideals(rnd):
    spec = random_shape(rnd)
    assert matrix_weight_polynomial(spec) == weight_polynomial(poset_from_shape(spec))
