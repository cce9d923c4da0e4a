"""Recognition of k-Morin singularities and their isotopy-class labels.

The classifier computes, exactly:
  * the unique k with lambda(0) = eta lambda(0) = ... = eta^{k-1} lambda(0) = 0
    and eta^k lambda(0) != 0,
  * the rank of d(lambda, eta lambda, ..., eta^{k-1} lambda)(0) (must be k),
  * the sign invariants that separate classes, which depend on k, n and
    n mod 4 (when k = n) or on the parity of k (when k < n).

Class equality is decided purely by comparing the invariant tuples; the
signed normal-form representative is attached for reference.
"""

from fractions import Fraction

from .polyring import Poly, PolyMatrix, rational_det
from .germ import (MapGerm, VecField, analyze, null_field,
                   GermError, NotCorankOneError, DegenerateGermError)


def _sign(x):
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


class ClassLabel:
    """Singularity family + the sign invariants that pin the isotopy class.

    ``signs`` is the pair (eps1, eps2) of the attached normal-form
    representative; entries are +1/-1 or None when irrelevant.  Two labels
    are equal iff family, k and all relevant signs agree.
    """

    __slots__ = ("family", "signs", "normal_form", "k", "invariant")

    def __init__(self, family, signs=(None, None), normal_form=None,
                 k=None, invariant=("none",)):
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "signs", tuple(signs))
        object.__setattr__(self, "normal_form", normal_form)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "invariant", tuple(invariant))

    def __setattr__(self, *a):
        raise AttributeError("ClassLabel is immutable")

    def key(self):
        return (self.family, self.k, self.signs)

    def __eq__(self, other):
        if not isinstance(other, ClassLabel):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "ClassLabel(%s)" % self.describe()

    def describe(self):
        bits = [self.family]
        names = ("eps1", "eps2")
        for name, s in zip(names, self.signs):
            if s is not None:
                bits.append("%s=%+d" % (name, s))
        return " ".join(bits)


class MorinResult:
    """Outcome of Morin recognition: k, the raw signs, the invariant
    combination dictated by (k, n, n mod 4), and the class label."""

    __slots__ = ("k", "n", "eta_k_lambda_sign", "grad_det_sign",
                 "invariant", "class_label")

    def __init__(self, k, n, eta_k_lambda_sign, grad_det_sign,
                 invariant, class_label):
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "eta_k_lambda_sign", eta_k_lambda_sign)
        object.__setattr__(self, "grad_det_sign", grad_det_sign)
        object.__setattr__(self, "invariant", tuple(invariant))
        object.__setattr__(self, "class_label", class_label)

    def __setattr__(self, *a):
        raise AttributeError("MorinResult is immutable")


FAMILY_NAMES = {1: "fold", 2: "cusp", 3: "swallowtail", 4: "butterfly"}


def family_name(k):
    return FAMILY_NAMES.get(k, "morin-%d" % k)


def normal_form(k, n, eps1=1, eps2=1):
    """The signed k-Morin normal form in n variables.

    k = 1: (eps1*x1^2, x2, ..., xn).
    k >= 2: (eps1*(eps2*x2*x1 + x3*x1^2 + ... + xk*x1^{k-1} + x1^{k+1}),
             eps2*x2, x3, ..., xn).
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if eps1 not in (1, -1) or eps2 not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    x = [Poly.var(i, n) for i in range(1, n + 1)]
    if k == 1:
        comps = [x[0] ** 2 if eps1 == 1 else -(x[0] ** 2)] + x[1:]
        return MapGerm(comps, src_dim=n)
    first = x[1] * x[0]
    if eps2 == -1:
        first = -first
    for j in range(3, k + 1):
        first = first + x[j - 1] * x[0] ** (j - 1)
    first = first + x[0] ** (k + 1)
    if eps1 == -1:
        first = -first
    second = x[1] if eps2 == 1 else -x[1]
    comps = [first, second] + x[2:]
    return MapGerm(comps, src_dim=n)


def eta_lambda_chain(lam, eta, count):
    """[lambda, eta lambda, ..., eta^count lambda]."""
    chain = [lam]
    for _ in range(count):
        chain.append(eta.apply(chain[-1]))
    return chain


def _regular_result(n):
    label = ClassLabel("regular", (None, None), None, 0, ("none",))
    return MorinResult(0, n, None, None, ("none",), label)


def recognize_morin(f, analysis=None, eta=None):
    """Find k per the recognition criteria; raises DegenerateGermError if
    no k <= n works or the rank condition fails, NotCorankOneError for
    corank >= 2.  A regular germ (corank 0) yields k = 0 / family
    'regular'."""
    ana = analysis or analyze(f)
    if f.src_dim != f.tgt_dim:
        raise NotCorankOneError("Morin recognition needs an equidimensional germ")
    n = f.src_dim
    if ana.corank0 == 0:
        return _regular_result(n)
    if ana.corank0 >= 2:
        raise NotCorankOneError("not corank one at 0 (corank %d)" % ana.corank0)
    eta = eta or null_field(f, ana)
    chain = eta_lambda_chain(ana.lam, eta, n)
    origin = f.origin()
    values = [c.eval(origin) for c in chain]
    k = None
    for j in range(1, n + 1):
        if values[j] != 0:
            k = j
            break
        # values[0] = lambda(0) = 0 is guaranteed by corank >= 1
    if k is None:
        raise DegenerateGermError(
            "no k <= n with eta^k lambda(0) != 0; not a Morin singularity")
    grad_rows = [chain[j].gradient_at(origin) for j in range(k)]
    from .polyring import rational_rank
    if rational_rank(grad_rows) != k:
        raise DegenerateGermError(
            "rank d(lambda,...,eta^{k-1} lambda)(0) < k; not Morin (degenerate)")
    return morin_invariants(f, k, analysis=ana, eta=eta, chain=chain)


def morin_invariants(f, k, analysis=None, eta=None, chain=None):
    """Populate the invariant combination for a recognized k-Morin germ
    and build the class label.  See Tables of class counts:
      k = n:  n=1 -> sign of the second derivative of f1;
              n%4==0 -> pair (sign eta^n lambda, sign det grad chain);
              n%4==1 -> sign det grad; n%4==2 -> sign eta^n lambda;
              n%4==3 -> sign(eta^n lambda * det grad).
      k < n:  k even -> sign eta^k lambda (2 classes); k odd -> none (1 class).
    """
    ana = analysis or analyze(f)
    n = f.src_dim
    eta = eta or null_field(f, ana)
    chain = chain or eta_lambda_chain(ana.lam, eta, n)
    origin = f.origin()
    s_etak = _sign(chain[k].eval(origin))
    grad_det_sign = None
    if k == n:
        rows = [chain[j].gradient_at(origin) for j in range(n)]
        grad_det_sign = _sign(rational_det(rows))

    if k < n:
        if k % 2 == 0:
            invariant = ("etaklam", s_etak)
            eps1 = s_etak
            label = ClassLabel(family_name(k), (eps1, 1),
                               normal_form(k, n, eps1, 1), k, invariant)
        else:
            invariant = ("none",)
            label = ClassLabel(family_name(k), (None, None),
                               normal_form(k, n, 1, 1), k, invariant)
    elif n == 1:
        # sign of f''(0) computed as eta eta f1 at 0
        f1 = f.components[0]
        s = _sign(eta.apply(eta.apply(f1)).eval(origin))
        invariant = ("eta2f", s)
        label = ClassLabel("fold", (s, None), normal_form(1, 1, s), 1, invariant)
    elif n % 4 == 0:
        pair = (s_etak, grad_det_sign)
        invariant = ("pair", pair)
        eps2 = -grad_det_sign
        eps1 = s_etak * eps2
        label = ClassLabel(family_name(k), (eps1, eps2),
                           normal_form(k, n, eps1, eps2), k, invariant)
    elif n % 4 == 1:
        invariant = ("detgrad", grad_det_sign)
        eps1 = grad_det_sign
        label = ClassLabel(family_name(k), (eps1, 1),
                           normal_form(k, n, eps1, 1), k, invariant)
    elif n % 4 == 2:
        invariant = ("etaklam", s_etak)
        eps1 = s_etak
        label = ClassLabel(family_name(k), (eps1, 1),
                           normal_form(k, n, eps1, 1), k, invariant)
    else:  # n % 4 == 3
        s = s_etak * grad_det_sign
        invariant = ("prod", s)
        label = ClassLabel(family_name(k), (1, s),
                           normal_form(k, n, 1, s), k, invariant)
    return MorinResult(k, n, s_etak, grad_det_sign, invariant, label)


def isotopy_class(f, analysis=None, eta=None):
    """Full pipeline: analyze -> null field -> recognition -> invariants.
    Returns the ClassLabel."""
    return recognize_morin(f, analysis=analysis, eta=eta).class_label


def invariant_kind(k, n):
    """Which invariant combination applies for a k-Morin germ in n
    variables ('none', 'eta2f', 'etaklam', 'detgrad', 'prod' or 'pair')."""
    if k < n:
        return "etaklam" if k % 2 == 0 else "none"
    if n == 1:
        return "eta2f"
    return {0: "pair", 1: "detgrad", 2: "etaklam", 3: "prod"}[n % 4]


def class_count(k, n):
    """Number of isotopy classes for k-Morin germs in n variables."""
    if k < n:
        return 2 if k % 2 == 0 else 1
    return 4 if (n % 4 == 0) else 2
