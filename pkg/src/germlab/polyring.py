"""Exact multivariate polynomial arithmetic over the rationals.

Everything downstream (germ analysis, classifiers, the perturbation lab)
runs on these types.  Coefficients are `fractions.Fraction` ("Rat"), terms
are stored sparsely keyed by exponent vector, so every sign and rank test
is exact -- there are no tolerances anywhere in the classification paths.
"""

from fractions import Fraction


Rat = Fraction


def rat(x):
    """Coerce ints / strings / Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class DimensionError(ValueError):
    """Raised when operands disagree on the number of variables."""


class Poly:
    """A polynomial in ``nvars`` variables with exact rational coefficients.

    ``terms`` maps exponent tuples (length ``nvars``) to nonzero Fractions.
    Example: 3*x1^2*x2 in 2 variables is ``{(2, 1): Fraction(3)}``.
    Instances are treated as immutable; all operations return new Polys.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        if nvars < 0:
            raise DimensionError("nvars must be nonnegative")
        clean = {}
        for expo, coef in (terms or {}).items():
            if len(expo) != nvars:
                raise DimensionError(
                    "exponent vector %r has wrong length (nvars=%d)" % (expo, nvars))
            coef = rat(coef)
            if coef != 0:
                clean[tuple(expo)] = coef
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # ---- constructors -------------------------------------------------
    @classmethod
    def const(cls, c, nvars):
        c = rat(c)
        if c == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i, nvars):
        """The variable x_i (1-based index)."""
        if not 1 <= i <= nvars:
            raise DimensionError("variable index %d out of range 1..%d" % (i, nvars))
        expo = [0] * nvars
        expo[i - 1] = 1
        return cls(nvars, {tuple(expo): Fraction(1)})

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def one(cls, nvars):
        return cls.const(1, nvars)

    # ---- predicates ---------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in expo) for expo in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        """Degree in the variable x_i (1-based); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[i - 1] for e in self.terms)

    # ---- ring arithmetic ----------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError("nvars mismatch: %d vs %d"
                                     % (self.nvars, other.nvars))
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for expo, coef in other.terms.items():
            s = out.get(expo, Fraction(0)) + coef
            if s == 0:
                out.pop(expo, None)
            else:
                out[expo] = s
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(expo, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(expo, None)
                else:
                    out[expo] = s
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        c = rat(c)
        return Poly(self.nvars, {e: coef * c for e, coef in self.terms.items()})

    # ---- calculus / evaluation ----------------------------------------
    def partial(self, i):
        """Formal partial derivative with respect to x_i (1-based)."""
        if not 1 <= i <= self.nvars:
            raise DimensionError("variable index %d out of range 1..%d"
                                 % (i, self.nvars))
        j = i - 1
        out = {}
        for expo, coef in self.terms.items():
            if expo[j] == 0:
                continue
            new = list(expo)
            new[j] -= 1
            out[tuple(new)] = coef * expo[j]
        return Poly(self.nvars, out)

    def eval(self, point):
        """Exact value at a rational point (sequence of length nvars)."""
        if len(point) != self.nvars:
            raise DimensionError("point length %d != nvars %d"
                                 % (len(point), self.nvars))
        pt = [rat(p) for p in point]
        total = Fraction(0)
        for expo, coef in self.terms.items():
            v = coef
            for p, e in zip(pt, expo):
                if e:
                    v *= p ** e
            total += v
        return total

    def subs(self, replacements):
        """Substitute x_i -> replacements[i-1] (Polys sharing one nvars)."""
        if len(replacements) != self.nvars:
            raise DimensionError("need %d replacement polynomials" % self.nvars)
        if not replacements:
            return Poly.const(self.constant_term(), 0)
        m = replacements[0].nvars
        for g in replacements:
            if g.nvars != m:
                raise DimensionError("replacement polynomials disagree on nvars")
        # cache powers of each replacement
        powers = [{0: Poly.one(m)} for _ in replacements]

        def power(idx, e):
            cache = powers[idx]
            if e not in cache:
                cache[e] = power(idx, e - 1) * replacements[idx]
            return cache[e]

        total = Poly.zero(m)
        for expo, coef in self.terms.items():
            term = Poly.const(coef, m)
            for idx, e in enumerate(expo):
                if e:
                    term = term * power(idx, e)
            total = total + term
        return total

    def compose_linear(self, A):
        """p(A x) for a square rational matrix A of size nvars."""
        n = self.nvars
        if len(A) != n or any(len(row) != n for row in A):
            raise DimensionError("matrix must be %dx%d" % (n, n))
        reps = []
        for i in range(n):
            terms = {}
            for j in range(n):
                c = rat(A[i][j])
                if c != 0:
                    expo = [0] * n
                    expo[j] = 1
                    terms[tuple(expo)] = c
            reps.append(Poly(n, terms))
        return self.subs(reps)

    def gradient_at(self, point):
        """Row vector of exact partial-derivative values at a point."""
        return [self.partial(i).eval(point) for i in range(1, self.nvars + 1)]

    # ---- comparisons / display ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return "Poly(%d, %s)" % (self.nvars, self.render())

    def render(self, names=None):
        """Human / parser-compatible text, deterministic term order."""
        if not self.terms:
            return "0"
        if names is None:
            names = ["x%d" % (i + 1) for i in range(self.nvars)]
        pieces = []
        for expo in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            coef = self.terms[expo]
            factors = []
            for name, e in zip(names, expo):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            mag = abs(coef)
            body = "*".join(factors)
            if not factors:
                body = _rat_str(mag)
            elif mag != 1:
                body = "%s*%s" % (_rat_str(mag), body)
            sign = "-" if coef < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += " %s %s" % (sign, body)
        return text


def _rat_str(c):
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def dir_deriv(p, v):
    """Directional derivative sum_i v_i * dp/dx_i; v is a sequence of Polys
    (or anything with .components, e.g. a vector field)."""
    comps = getattr(v, "components", v)
    if len(comps) != p.nvars:
        raise DimensionError("vector field has %d components, poly has %d vars"
                             % (len(comps), p.nvars))
    total = Poly.zero(p.nvars)
    for i, vi in enumerate(comps, start=1):
        if isinstance(vi, Poly):
            if not vi.is_zero():
                total = total + vi * p.partial(i)
        else:
            c = rat(vi)
            if c != 0:
                total = total + p.partial(i).scale(c)
    return total


class PolyMatrix:
    """A rows x cols matrix of Polys (row-major), used for Jacobians,
    gradient stacks and Hessians."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = list(entries)
        if rows * cols != len(entries):
            raise DimensionError("expected %d entries, got %d"
                                 % (rows * cols, len(entries)))
        if entries:
            nv = entries[0].nvars
            for e in entries:
                if e.nvars != nv:
                    raise DimensionError("matrix entries disagree on nvars")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("PolyMatrix is immutable")

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return [self.entry(i, j) for i in range(self.rows)]

    def minor(self, drop_i, drop_j):
        ents = [self.entry(i, j)
                for i in range(self.rows) if i != drop_i
                for j in range(self.cols) if j != drop_j]
        return PolyMatrix(self.rows - 1, self.cols - 1, ents)

    def det(self):
        """Exact determinant by cofactor expansion (fine at size <= 5)."""
        if self.rows != self.cols:
            raise DimensionError("determinant needs a square matrix")
        n = self.rows
        if n == 0:
            return Poly.one(0)
        if n == 1:
            return self.entry(0, 0)
        nv = self.entries[0].nvars
        total = Poly.zero(nv)
        for j in range(n):
            a = self.entry(0, j)
            if a.is_zero():
                continue
            cof = self.minor(0, j).det()
            if j % 2:
                cof = -cof
            total = total + a * cof
        return total

    def adjugate(self):
        """Classical adjugate: adj(M)[i][j] = (-1)^{i+j} det(minor(j, i)).
        Satisfies M * adj(M) = det(M) * I as a polynomial identity."""
        if self.rows != self.cols:
            raise DimensionError("adjugate needs a square matrix")
        n = self.rows
        nv = self.entries[0].nvars if self.entries else 0
        if n == 1:
            return PolyMatrix(1, 1, [Poly.one(nv)])
        ents = []
        for i in range(n):
            for j in range(n):
                cof = self.minor(j, i).det()
                if (i + j) % 2:
                    cof = -cof
                ents.append(cof)
        return PolyMatrix(n, n, ents)

    def eval(self, point):
        """Rational matrix (list of rows) of exact values at a point."""
        return [[self.entry(i, j).eval(point) for j in range(self.cols)]
                for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == \
               (other.rows, other.cols, other.entries)

    def __repr__(self):
        return "PolyMatrix(%d, %d, %r)" % (self.rows, self.cols, self.entries)


# ---- exact rational linear algebra (plain lists of Fractions) ----------

def rational_rref(mat):
    """Reduced row echelon form of a rational matrix.  Returns
    (rref_rows, pivot_columns).  Input is not modified."""
    rows = [[rat(x) for x in row] for row in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rational_rank(mat):
    if not mat:
        return 0
    return len(rational_rref(mat)[1])


def rational_nullspace(mat):
    """Deterministic basis of the right nullspace of a rational matrix.
    Each basis vector has a 1 in its free-variable slot (RREF convention)."""
    if not mat:
        return []
    ncols = len(mat[0])
    rref, pivots = rational_rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rref[r][fc]
        basis.append(vec)
    return basis


def rational_det(mat):
    """Exact determinant of a square rational matrix (Gaussian elimination)."""
    rows = [[rat(x) for x in row] for row in mat]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise DimensionError("determinant needs a square matrix")
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det
