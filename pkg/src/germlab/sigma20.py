"""Classification of corank-two germs (R^4,0) -> (R^4,0) into signed
hyperbolic / elliptic umbilics.

Criteria (after a linear target change making d(f1)(0) = d(f2)(0) = 0 and
with constant fields xi, eta spanning ker df(0)):

  det hess_{(xi,eta)} lambda(0) < 0  ->  hyperbolic;  > 0  ->  elliptic.
  D = det(grad(xi f1), grad(xi f2), grad(eta f1), grad(eta f2))(0):
      hyperbolic: sign D = -eps1;
      elliptic:   sign D = eps1 and sign trace hess = eps1 * eps2.

Both quantities are insensitive (in sign) to the choice of kernel basis
and of the normalized target coordinates, so a single deterministic
choice suffices; the invariance is exercised by the tests.
"""

from fractions import Fraction

from .polyring import (Poly, PolyMatrix, rat, rational_det, rational_rank,
                       rational_nullspace, rational_rref)
from .germ import MapGerm, VecField, analyze, GermError
from .morin import ClassLabel, _sign


class DegenerateSigmaError(GermError):
    """The second-order data is degenerate: not a stable umbilic."""


def hyp_normal_form(eps1=1):
    x1, x2, x3, x4 = (Poly.var(i, 4) for i in range(1, 5))
    second = x2 ** 2 + (x1 * x4 if eps1 == 1 else -(x1 * x4))
    return MapGerm([x1 ** 2 + x2 * x3, second, x3, x4], src_dim=4)


def elli_normal_form(eps1=1, eps2=1):
    x1, x2, x3, x4 = (Poly.var(i, 4) for i in range(1, 5))
    first = x1 ** 2 - x2 ** 2 + (x1 * x3).scale(eps1) + x2 * x4
    second = (x1 * x2).scale(eps1) + (x1 * x4).scale(eps1) - x2 * x3
    last = x4 if eps2 == 1 else -x4
    return MapGerm([first, second, x3, last], src_dim=4)


class Sigma20Result:
    """kind (hyp/elli), the signs eps1/eps2, and the raw criterion signs."""

    __slots__ = ("kind", "eps1", "eps2", "hess_det_sign", "big_det_sign",
                 "trace_sign", "class_label")

    def __init__(self, kind, eps1, eps2, hess_det_sign, big_det_sign,
                 trace_sign, class_label):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "eps1", eps1)
        object.__setattr__(self, "eps2", eps2)
        object.__setattr__(self, "hess_det_sign", hess_det_sign)
        object.__setattr__(self, "big_det_sign", big_det_sign)
        object.__setattr__(self, "trace_sign", trace_sign)
        object.__setattr__(self, "class_label", class_label)

    def __setattr__(self, *a):
        raise AttributeError("Sigma20Result is immutable")


def target_normalize(f):
    """Orientation-preserving linear target change B (det B > 0) so that
    the first two components of B o f have vanishing differential at 0.
    Returns (B o f, B).  Requires rank df(0) = 2."""
    if f.src_dim != 4 or f.tgt_dim != 4:
        raise GermError("needs a germ (R^4,0) -> (R^4,0)")
    ana = analyze(f)
    if ana.rank0 != 2:
        raise GermError("rank df(0) must be 2, got %d" % ana.rank0)
    J0 = ana.jacobian.eval(f.origin())
    # left nullspace of J0 = right nullspace of its transpose
    J0t = [[J0[i][j] for i in range(4)] for j in range(4)]
    left_null = rational_nullspace(J0t)
    rows = [list(v) for v in left_null]  # two rows
    # complete with standard basis rows keeping the matrix invertible
    for i in range(4):
        cand = rows + [[Fraction(1 if j == i else 0) for j in range(4)]]
        if rational_rank(cand) == len(rows) + 1:
            rows = cand
        if len(rows) == 4:
            break
    det = rational_det(rows)
    if det < 0:
        rows[3] = [-v for v in rows[3]]
    B = rows
    comps = []
    for i in range(4):
        acc = Poly.zero(4)
        for j in range(4):
            if B[i][j] != 0:
                acc = acc + f.components[j].scale(B[i][j])
        comps.append(acc)
    return MapGerm(comps, src_dim=4), B


def kernel_frame(f, analysis=None):
    """Deterministic exact basis (xi, eta) of ker df(0) as constant
    fields, each vector normalized with its leading entry +1 (the RREF
    nullspace convention already provides this)."""
    ana = analysis or analyze(f)
    if ana.corank0 != 2:
        raise GermError("corank at 0 must be 2, got %d" % ana.corank0)
    J0 = ana.jacobian.eval(f.origin())
    basis = rational_nullspace(J0)
    return (VecField.constant(basis[0], 4), VecField.constant(basis[1], 4))


def classify_sigma20(f):
    """Classify a rank-2 germ (R^4,0) -> (R^4,0) as a signed hyperbolic
    or elliptic umbilic; raises DegenerateSigmaError if any criterion
    quantity vanishes."""
    g, B = target_normalize(f)
    ana = analyze(g)
    xi, eta = kernel_frame(g, ana)
    lam = ana.lam
    origin = g.origin()
    h11 = xi.apply(xi.apply(lam)).eval(origin)
    h12 = xi.apply(eta.apply(lam)).eval(origin)
    h21 = eta.apply(xi.apply(lam)).eval(origin)
    h22 = eta.apply(eta.apply(lam)).eval(origin)
    hess_det = h11 * h22 - h12 * h21
    if hess_det == 0:
        raise DegenerateSigmaError("det hess lambda(0) = 0: degenerate germ")
    grads = []
    for field in (xi, eta):
        for comp in g.components[:2]:
            grads.append(field.apply(comp).gradient_at(origin))
    big_det = rational_det(grads)
    if big_det == 0:
        raise DegenerateSigmaError("the 4x4 determinant vanishes: not stable")
    hs = _sign(hess_det)
    bs = _sign(big_det)
    if hess_det < 0:
        kind = "sigma20-hyp"
        eps1 = -bs
        label = ClassLabel(kind, (eps1, None), hyp_normal_form(eps1),
                           None, ("bigdet", bs))
        return Sigma20Result("hyp", eps1, None, hs, bs, None, label)
    trace = h11 + h22
    ts = _sign(trace)
    if ts == 0:
        raise DegenerateSigmaError("trace hess lambda(0) = 0 in the elliptic case")
    eps1 = bs
    eps2 = eps1 * ts
    kind = "sigma20-elli"
    label = ClassLabel(kind, (eps1, eps2), elli_normal_form(eps1, eps2),
                       None, ("bigdet-trace", (bs, ts)))
    return Sigma20Result("elli", eps1, eps2, hs, bs, ts, label)
