"""Shared corpus and helpers for the test suite."""

import random
from fractions import Fraction

import pytest

from germlab.polyring import Poly, rational_det
from germlab.germ import MapGerm
from germlab.morin import normal_form
from germlab.lowdim import _plane_normal_form, _surface_normal_form
from germlab.sigma20 import hyp_normal_form, elli_normal_form


def signed_morin_forms(n):
    """All signed k=n normal forms in n variables."""
    if n == 1:
        return [normal_form(1, 1, s) for s in (1, -1)]
    return [normal_form(n, n, e1, e2) for e1 in (1, -1) for e2 in (1, -1)]


def corpus_30():
    """Exactly 30 normal forms spanning every classifier route."""
    germs = []
    germs += signed_morin_forms(1)                      # 2
    germs += signed_morin_forms(2)                      # 4
    germs += signed_morin_forms(3)                      # 4
    germs += signed_morin_forms(4)                      # 4
    germs.append(normal_form(1, 2))                     # fold, n=2
    germs += [normal_form(2, 3, s, 1) for s in (1, -1)]  # cusp in 3 vars
    for fam in ("lips", "beaks", "planar-swallowtail"):
        germs += [_plane_normal_form(fam, s) for s in (1, -1)]  # 6
    germs.append(_surface_normal_form("whitney-umbrella"))
    germs += [_surface_normal_form("S1+", s) for s in (1, -1)]
    germs += [_surface_normal_form("S1-", s) for s in (1, -1)]  # 5
    germs.append(hyp_normal_form(1))
    germs.append(elli_normal_form(1, 1))                # 2
    assert len(germs) == 30
    return germs


def random_gl_pos(rng, n):
    """Random rational matrix with det > 0, entries in [-3, 3]."""
    while True:
        A = [[Fraction(rng.randint(-3, 3)) for _ in range(n)]
             for _ in range(n)]
        d = rational_det(A)
        if d == 0:
            continue
        if d < 0:
            A[0] = [-v for v in A[0]]
        return A


def change_coordinates(f, A, B):
    """B o f o A for linear A (source, n x n) and B (target, m x m)."""
    comps = [c.compose_linear(A) for c in f.components]
    out = []
    for i in range(f.tgt_dim):
        acc = Poly.zero(f.src_dim)
        for j in range(f.tgt_dim):
            if B[i][j] != 0:
                acc = acc + comps[j].scale(B[i][j])
        out.append(acc)
    return MapGerm(out, src_dim=f.src_dim)


@pytest.fixture(scope="session")
def corpus():
    return corpus_30()
