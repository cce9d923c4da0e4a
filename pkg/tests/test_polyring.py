"""Exact polynomial arithmetic: examples, ring axioms, calculus, linear
algebra, and a float finite-difference bridge for the formal derivative."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from germlab.polyring import (Poly, PolyMatrix, rat, dir_deriv,
                              DimensionError, rational_rref, rational_rank,
                              rational_nullspace, rational_det)


def P(nvars, terms):
    return Poly(nvars, terms)


# ---- direct examples ----------------------------------------------------

def test_construction_prunes_zero_terms():
    p = P(2, {(1, 0): Fraction(0), (0, 1): 3})
    assert p.terms == {(0, 1): Fraction(3)}


def test_var_and_const():
    x1 = Poly.var(1, 2)
    assert x1.terms == {(1, 0): Fraction(1)}
    assert Poly.const(0, 3).is_zero()
    assert Poly.const("2/3", 1).constant_term() == Fraction(2, 3)


def test_basic_arithmetic():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    p = (x1 + x2) * (x1 - x2)
    assert p == x1 ** 2 - x2 ** 2
    assert (x1 + 1) * (x1 - 1) == x1 ** 2 - 1


def test_pow_matches_repeated_multiplication():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    p = x1 + 2 * x2
    q = Poly.one(2)
    for _ in range(5):
        q = q * p
    assert p ** 5 == q


def test_partial_derivative_values():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    p = x1 ** 3 * x2 + x2 ** 2
    assert p.partial(1) == 3 * x1 ** 2 * x2
    assert p.partial(2) == x1 ** 3 + 2 * x2


def test_eval_exact():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    p = x1 ** 2 + x1 * x2
    assert p.eval([Fraction(1, 2), Fraction(1, 3)]) == \
        Fraction(1, 4) + Fraction(1, 6)


def test_subs_composition():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    p = x1 * x2
    # x1 -> x1 + x2, x2 -> x2^2
    q = p.subs([x1 + x2, x2 ** 2])
    assert q == x1 * x2 ** 2 + x2 ** 3


def test_compose_linear():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    p = x1 ** 2
    A = [[0, 1], [1, 0]]  # swap variables
    assert p.compose_linear(A) == x2 ** 2


def test_dimension_errors():
    with pytest.raises(DimensionError):
        Poly.var(1, 2) + Poly.var(1, 3)
    with pytest.raises(DimensionError):
        Poly.var(3, 2)
    with pytest.raises(DimensionError):
        Poly.var(1, 2).eval([1])


def test_dir_deriv():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    p = x1 ** 2 * x2
    # field (x2, 1): x2 * dp/dx1 + dp/dx2
    v = [x2, Poly.one(2)]
    assert dir_deriv(p, v) == 2 * x1 * x2 ** 2 + x1 ** 2


def test_render_round_data():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    p = x1 ** 2 - Poly.const(Fraction(1, 2), 2) * x2
    assert p.render() == "x1^2 - 1/2*x2"
    assert Poly.zero(2).render() == "0"


# ---- hypothesis ring axioms --------------------------------------------

coef = st.fractions(min_value=-50, max_value=50, max_denominator=10)
expo = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(expo, coef, max_size=5).map(lambda d: Poly(2, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + Poly.zero(2) == p
    assert p * Poly.one(2) == p
    assert p - p == Poly.zero(2)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_derivative_is_linear_and_leibniz(p, q):
    for i in (1, 2):
        assert (p + q).partial(i) == p.partial(i) + q.partial(i)
        assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_mixed_partials_commute(p):
    assert p.partial(1).partial(2) == p.partial(2).partial(1)


@settings(max_examples=40, deadline=None)
@given(polys,
       st.fractions(min_value=-5, max_value=5, max_denominator=5),
       st.fractions(min_value=-5, max_value=5, max_denominator=5))
def test_eval_is_ring_homomorphism(p, a, b):
    q = p * p + p
    assert q.eval([a, b]) == p.eval([a, b]) ** 2 + p.eval([a, b])


# ---- finite-difference bridge ------------------------------------------

def test_formal_derivative_matches_finite_difference():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    p = x1 ** 3 * x2 - 2 * x1 * x2 ** 2 + Fraction(1, 3) * x2
    pt = [0.37, -0.81]
    h = 1e-6
    for i, e in ((1, [h, 0.0]), (2, [0.0, h])):
        num = (p.eval([Fraction(pt[j] + e[j]) for j in range(2)]) -
               p.eval([Fraction(pt[j] - e[j]) for j in range(2)])) / Fraction(2 * h)
        exact = p.partial(i).eval([Fraction(v) for v in pt])
        assert abs(float(num) - float(exact)) <= 1e-6 * max(1.0, abs(float(exact)))


# ---- matrices ----------------------------------------------------------

def test_det_2x2():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    M = PolyMatrix(2, 2, [x1, x2, x2, x1])
    assert M.det() == x1 ** 2 - x2 ** 2


@settings(max_examples=25, deadline=None)
@given(st.lists(st.dictionaries(expo, coef, max_size=3), min_size=9, max_size=9))
def test_adjugate_identity(term_dicts):
    M = PolyMatrix(3, 3, [Poly(2, d) for d in term_dicts])
    adj = M.adjugate()
    d = M.det()
    # M * adj(M) = det(M) * I
    for i in range(3):
        for j in range(3):
            acc = Poly.zero(2)
            for k in range(3):
                acc = acc + M.entry(i, k) * adj.entry(k, j)
            assert acc == (d if i == j else Poly.zero(2))


def test_rational_linear_algebra():
    mat = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rational_rank(mat) == 2
    ns = rational_nullspace(mat)
    assert len(ns) == 1
    for row in mat:
        assert sum(r * v for r, v in zip(row, ns[0])) == 0
    rref, pivots = rational_rref(mat)
    assert pivots == [0, 1]
    assert rational_det([[2, 1], [1, 1]]) == 1
    assert rational_det([[1, 2], [2, 4]]) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
                min_size=3, max_size=3))
def test_rational_det_matches_cofactor(rows):
    M = PolyMatrix(3, 3, [Poly.const(v, 1) for row in rows for v in row])
    assert M.det().constant_term() == rational_det(rows)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4),
                min_size=2, max_size=4))
def test_nullspace_vectors_annihilate(rows):
    for v in rational_nullspace(rows):
        for row in rows:
            assert sum(rat(a) * b for a, b in zip(row, v)) == 0
    assert rational_rank(rows) + len(rational_nullspace(rows)) == 4
