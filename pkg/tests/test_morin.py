"""Morin recognition: sign identities on the signed normal forms, class
counts, degeneracy detection, and invariance of labels."""

import random

import pytest

from germlab.polyring import Poly
from germlab.germ import (MapGerm, analyze, null_field, translate,
                          NotCorankOneError, DegenerateGermError)
from germlab.morin import (recognize_morin, isotopy_class, normal_form,
                           class_count, invariant_kind, eta_lambda_chain)
from conftest import signed_morin_forms, random_gl_pos, change_coordinates


def all_signed(k, n):
    if k == 1 and n == 1:
        return [(normal_form(1, 1, s), s, 1) for s in (1, -1)]
    return [(normal_form(k, n, e1, e2), e1, e2)
            for e1 in (1, -1) for e2 in (1, -1)]


# ---- the two sign identities on every signed k = n normal form ---------

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_sign_identities_k_equals_n(n):
    """sign eta^n lambda(0) = eps1*eps2 and
    sign det grad(lambda, ..., eta^{n-1} lambda)(0) =
    (-1)^(n-1) * eps1^n * eps2^(n+1), for every sign choice, with the
    kernel field oriented as +d/dx1."""
    from germlab.germ import VecField
    eta = VecField.constant([1] + [0] * (n - 1), n)
    for f, e1, e2 in all_signed(n, n):
        res = recognize_morin(f, eta=eta)
        assert res.k == n
        if n == 1:
            assert res.eta_k_lambda_sign == e1 * e2
            continue
        assert res.eta_k_lambda_sign == e1 * e2
        expected_det = (-1) ** (n - 1) * e1 ** n * e2 ** (n + 1)
        assert res.grad_det_sign == expected_det


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 2), (3, 2), (4, 4),
                                        (5, 2), (6, 2)])
def test_class_counts_k_equals_n(n, expected):
    labels = {isotopy_class(f) for f, _, _ in all_signed(n, n)}
    assert len(labels) == expected
    assert class_count(n, n) == expected


@pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 7)
                                 for k in range(1, n)])
def test_class_counts_k_less_than_n(k, n):
    labels = {isotopy_class(f) for f, _, _ in all_signed(k, n)}
    expected = 2 if k % 2 == 0 else 1
    assert len(labels) == expected
    assert class_count(k, n) == expected


def test_all_folds_isotopic_for_n_above_1():
    for n in (2, 3, 4, 5):
        base = isotopy_class(normal_form(1, n, 1))
        for s in (1, -1):
            f = normal_form(1, n, s)
            assert isotopy_class(f) == base
            # also under a source/target change
            rng = random.Random(7 * n + s)
            A = random_gl_pos(rng, n)
            B = random_gl_pos(rng, n)
            assert isotopy_class(change_coordinates(f, A, B)) == base


def test_fold_n1_has_two_classes():
    plus = isotopy_class(normal_form(1, 1, 1))
    minus = isotopy_class(normal_form(1, 1, -1))
    assert plus != minus
    assert plus.signs[0] == 1 and minus.signs[0] == -1


def test_label_round_trip_through_normal_form():
    """The attached normal-form representative classifies to the same
    label (self-consistency of the sign recovery)."""
    for n in range(1, 7):
        for f, _, _ in all_signed(n, n):
            label = isotopy_class(f)
            assert isotopy_class(label.normal_form) == label
    for n in range(2, 6):
        for k in range(1, n):
            for f, _, _ in all_signed(k, n):
                label = isotopy_class(f)
                assert isotopy_class(label.normal_form) == label


def test_regular_germ():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    res = recognize_morin(MapGerm([x1 + x2 ** 2, x2]))
    assert res.k == 0 and res.class_label.family == "regular"


def test_corank_two_rejected():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    with pytest.raises(NotCorankOneError):
        recognize_morin(MapGerm([x1 ** 2, x2 ** 2]))


def test_degenerate_germ_rejected():
    # lips germ: the whole chain vanishes / rank drops -> not Morin
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    f = MapGerm([x1 * (x1 ** 2 + x2 ** 2), x2])
    with pytest.raises(DegenerateGermError):
        recognize_morin(f)


def test_eta_chain_lengths():
    f = normal_form(2, 2, 1, 1)
    ana = analyze(f)
    eta = null_field(f, ana)
    chain = eta_lambda_chain(ana.lam, eta, 4)
    assert len(chain) == 5
    assert chain[0] == ana.lam


def test_invariant_kind_table():
    assert invariant_kind(1, 1) == "eta2f"
    assert invariant_kind(4, 4) == "pair"
    assert invariant_kind(5, 5) == "detgrad"
    assert invariant_kind(2, 2) == "etaklam"
    assert invariant_kind(3, 3) == "prod"
    assert invariant_kind(2, 5) == "etaklam"
    assert invariant_kind(3, 5) == "none"


def test_eta_reversal_and_rescaling_stability():
    for n in (2, 3, 4):
        for f, _, _ in all_signed(n, n):
            ana = analyze(f)
            eta = null_field(f, ana)
            base = recognize_morin(f, analysis=ana, eta=eta).class_label
            assert recognize_morin(f, analysis=ana, eta=-eta).class_label == base
            assert recognize_morin(f, analysis=ana,
                                   eta=eta.scale(3)).class_label == base


def test_label_stable_under_coordinate_changes():
    rng = random.Random(20260823)
    for n in (2, 3, 4):
        for f, _, _ in all_signed(n, n):
            base = isotopy_class(f)
            for _ in range(3):
                A = random_gl_pos(rng, n)
                B = random_gl_pos(rng, n)
                assert isotopy_class(change_coordinates(f, A, B)) == base


def test_recognition_away_from_origin():
    """Translating a Morin normal form to a nearby fold point yields a
    fold there."""
    f = normal_form(2, 2, 1, 1)  # (x1^3 + x1 x2, x2)
    # singular set: 3 x1^2 + x2 = 0; at x1 = 1, x2 = -3 lambda' != 0
    g = translate(f, [1, -3])
    res = recognize_morin(g)
    assert res.k == 1
