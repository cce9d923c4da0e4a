"""Map-germ container and the shared geometric primitives:
Jacobian, lambda (= det Jacobian), rank/corank at the origin,
the adjugate-based null vector field, and point translation."""

from fractions import Fraction

from .polyring import (Poly, PolyMatrix, DimensionError, dir_deriv, rat,
                       rational_rank)


class GermError(Exception):
    """Base class for classification-level errors."""


class NotCorankOneError(GermError):
    """The construction needs corank exactly one at the origin."""


class DegenerateGermError(GermError):
    """The germ fails the non-degeneracy (rank) part of the criteria."""


class VecField:
    """A polynomial vector field, e.g. the null field eta or the frame
    partner xi.  Components are Polys in the source variables."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        if comps:
            nv = comps[0].nvars
            for c in comps:
                if c.nvars != nv:
                    raise DimensionError("vector field components disagree on nvars")
        object.__setattr__(self, "components", comps)

    def __setattr__(self, *a):
        raise AttributeError("VecField is immutable")

    @classmethod
    def constant(cls, values, nvars):
        return cls([Poly.const(v, nvars) for v in values])

    def __len__(self):
        return len(self.components)

    def __neg__(self):
        return VecField([-c for c in self.components])

    def scale(self, c):
        return VecField([comp.scale(c) for comp in self.components])

    def at_zero(self):
        n = len(self.components)
        origin = [Fraction(0)] * (self.components[0].nvars if n else 0)
        return [c.eval(origin) for c in self.components]

    def apply(self, p):
        """Directional derivative of p along this field."""
        return dir_deriv(p, self)

    def __eq__(self, other):
        if not isinstance(other, VecField):
            return NotImplemented
        return self.components == other.components

    def __repr__(self):
        return "VecField(%r)" % (list(self.components),)


class MapGerm:
    """A polynomial map-germ (R^n, 0) -> (R^m, 0).

    The germ condition f(0) = 0 is enforced at construction: any constant
    terms are dropped, and ``had_constant`` records whether that happened.
    """

    __slots__ = ("src_dim", "tgt_dim", "components", "had_constant")

    def __init__(self, components, src_dim=None):
        comps = list(components)
        if not comps:
            raise DimensionError("a map-germ needs at least one component")
        n = comps[0].nvars if src_dim is None else src_dim
        had_constant = False
        fixed = []
        for c in comps:
            if c.nvars != n:
                raise DimensionError("component has %d variables, expected %d"
                                     % (c.nvars, n))
            ct = c.constant_term()
            if ct != 0:
                had_constant = True
                c = c - Poly.const(ct, n)
            fixed.append(c)
        object.__setattr__(self, "src_dim", n)
        object.__setattr__(self, "tgt_dim", len(fixed))
        object.__setattr__(self, "components", tuple(fixed))
        object.__setattr__(self, "had_constant", had_constant)

    def __setattr__(self, *a):
        raise AttributeError("MapGerm is immutable")

    def __eq__(self, other):
        if not isinstance(other, MapGerm):
            return NotImplemented
        return (self.src_dim == other.src_dim and
                self.components == other.components)

    def __hash__(self):
        return hash((self.src_dim, self.components))

    def __repr__(self):
        return "MapGerm(%s)" % "; ".join(c.render() for c in self.components)

    def origin(self):
        return [Fraction(0)] * self.src_dim


class GermAnalysis:
    """Jacobian, lambda (when equidimensional), and rank data at 0."""

    __slots__ = ("germ", "jacobian", "lam", "rank0", "corank0")

    def __init__(self, germ, jacobian, lam, rank0):
        object.__setattr__(self, "germ", germ)
        object.__setattr__(self, "jacobian", jacobian)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "rank0", rank0)
        object.__setattr__(self, "corank0", germ.src_dim - rank0)

    def __setattr__(self, *a):
        raise AttributeError("GermAnalysis is immutable")


def jacobian(f):
    """m x n PolyMatrix of partial derivatives."""
    ents = []
    for comp in f.components:
        for i in range(1, f.src_dim + 1):
            ents.append(comp.partial(i))
    return PolyMatrix(f.tgt_dim, f.src_dim, ents)


def analyze(f):
    """Exact Jacobian, lambda (= det J when n = m) and rank of df(0)."""
    J = jacobian(f)
    lam = J.det() if f.src_dim == f.tgt_dim else None
    J0 = J.eval(f.origin())
    rank0 = rational_rank(J0)
    return GermAnalysis(f, J, lam, rank0)


def null_field(f, analysis=None):
    """Null vector field for an equidimensional corank-one germ.

    Returns the first adjugate column of the Jacobian that is nonzero at
    the origin (ties broken by lowest column index).  The contract
    J * eta = lambda * e_j holds as a polynomial identity, so eta(p) lies
    in ker df(p) along the singular set and eta(0) != 0.
    """
    if f.src_dim != f.tgt_dim:
        raise NotCorankOneError("null field needs an equidimensional germ")
    ana = analysis or analyze(f)
    if ana.corank0 != 1:
        raise NotCorankOneError("not corank one at 0 (corank %d)" % ana.corank0)
    adj = ana.jacobian.adjugate()
    origin = f.origin()
    for j in range(adj.cols):
        col = adj.column(j)
        if any(p.eval(origin) != 0 for p in col):
            return VecField(col)
    # cannot happen at corank one: adj(J)(0) has rank one, hence a nonzero column
    raise DegenerateGermError("adjugate vanishes at 0")  # pragma: no cover


def translate(f, p):
    """g(x) = f(x + p) - f(p): re-center the germ at the point p."""
    n = f.src_dim
    if len(p) != n:
        raise DimensionError("translation point has wrong length")
    p = [rat(v) for v in p]
    reps = [Poly.var(i, n) + Poly.const(p[i - 1], n) for i in range(1, n + 1)]
    # the MapGerm constructor subtracts f(p) (the constant terms)
    shifted = [c.subs(reps) for c in f.components]
    return MapGerm(shifted, src_dim=n)
