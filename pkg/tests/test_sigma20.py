"""Corank-two (R^4 -> R^4) umbilic classification."""

import random

import pytest

from germlab.polyring import Poly, rational_det
from germlab.germ import MapGerm, analyze, GermError
from germlab.sigma20 import (classify_sigma20, target_normalize,
                             hyp_normal_form, elli_normal_form,
                             DegenerateSigmaError)
from conftest import random_gl_pos, change_coordinates


@pytest.mark.parametrize("eps1", [1, -1])
def test_hyperbolic_normal_forms(eps1):
    res = classify_sigma20(hyp_normal_form(eps1))
    assert res.kind == "hyp" and res.eps1 == eps1
    assert res.hess_det_sign == -1


@pytest.mark.parametrize("eps1,eps2",
                         [(1, 1), (1, -1), (-1, 1), (-1, -1)])
def test_elliptic_normal_forms(eps1, eps2):
    res = classify_sigma20(elli_normal_form(eps1, eps2))
    assert res.kind == "elli"
    assert (res.eps1, res.eps2) == (eps1, eps2)
    assert res.hess_det_sign == 1


def test_hyperbolic_reference_values():
    """On the eps1 = +1 hyperbolic normal form: det hess lambda(0) = -16
    and the 4x4 determinant = -4, exactly."""
    from germlab.sigma20 import kernel_frame
    g, B = target_normalize(hyp_normal_form(1))
    ana = analyze(g)
    xi, eta = kernel_frame(g, ana)
    origin = g.origin()
    h11 = xi.apply(xi.apply(ana.lam)).eval(origin)
    h12 = xi.apply(eta.apply(ana.lam)).eval(origin)
    h21 = eta.apply(xi.apply(ana.lam)).eval(origin)
    h22 = eta.apply(eta.apply(ana.lam)).eval(origin)
    assert h11 * h22 - h12 * h21 == -16
    grads = []
    for field in (xi, eta):
        for comp in g.components[:2]:
            grads.append(field.apply(comp).gradient_at(origin))
    assert rational_det(grads) == -4


def test_class_counts():
    hyp = {classify_sigma20(hyp_normal_form(s)).class_label for s in (1, -1)}
    elli = {classify_sigma20(elli_normal_form(e1, e2)).class_label
            for e1 in (1, -1) for e2 in (1, -1)}
    assert len(hyp) == 2
    assert len(elli) == 4
    assert not hyp & elli


def test_target_normalize_contract():
    f = hyp_normal_form(1)
    g, B = target_normalize(f)
    assert rational_det(B) > 0
    origin = g.origin()
    for comp in g.components[:2]:
        assert all(v == 0 for v in comp.gradient_at(origin))


def test_rank_requirement():
    x = [Poly.var(i, 4) for i in range(1, 5)]
    with pytest.raises(GermError):
        target_normalize(MapGerm([x[0], x[1], x[2], x[3]]))


def test_degenerate_rejected():
    x = [Poly.var(i, 4) for i in range(1, 5)]
    # hessian of lambda in the kernel directions vanishes identically
    f = MapGerm([x[0] ** 2, x[1] ** 2, x[2], x[3]])
    with pytest.raises(DegenerateSigmaError):
        classify_sigma20(f)


def test_labels_stable_under_changes():
    rng = random.Random(17)
    forms = [hyp_normal_form(s) for s in (1, -1)]
    forms += [elli_normal_form(e1, e2) for e1 in (1, -1) for e2 in (1, -1)]
    for f in forms:
        base = classify_sigma20(f).class_label
        for _ in range(4):
            A = random_gl_pos(rng, 4)
            B = random_gl_pos(rng, 4)
            assert classify_sigma20(change_coordinates(f, A, B)).class_label == base
