"""Structural case recognition and predicted degree spectra.

The recognizable cases, keyed by the shape of the central quotient
Q = G/Z(G) and side conditions on G itself:

    T3.i       Q = Cp x Cp                                   |D| = 3
    T3.ii      Q nonabelian of order pq                      |D| = 3
    T4.i       |Q| = p^3, no abelian maximal subgroup in G   |D| = 4
    T4.ii      Q = (Cp x Cp) x| Cq minimal Frobenius,
               Sylow p of G abelian                          |D| = 4
    N5.i       |Q| = p^3, abelian maximal subgroup in G      |D| = 5
    N5.ii      |Q| = p^4, class sizes of G are {1, p^m}      |D| = 5
    NN5.i      Q = Cp x| C(q^2) Frobenius                    |D| = 5
    NN5.ii     Q = C(p^2) x| Cq Frobenius                    |D| = 5
    NN5.iii    Q = (Cp x Cp) x| Cq Frobenius with a normal
               subgroup of order p, Sylow p of G abelian     |D| = 5
    NN5.iv-A4  Q = A4, Sylow p of G nonabelian               |D| = 5
    NN5.iv-pq  Q = (Cp x Cp) x| Cq minimal Frobenius, p > q,
               Sylow p of G nonabelian                       |D| = 5
    NN5.v      Q = (Cp)^3 x| Cq minimal Frobenius,
               Sylow p of G abelian                          |D| = 5
    L31        nilpotent fallback: abelian maximal subgroup,
               |Q| = p^n                                     |D| = 2n-1
    L32        nilpotent fallback: class sizes {1, p^m},
               |Q| = p^n                                     |D| = n+1

Cases are evaluated in a fixed order (nilpotent first, then the
non-nilpotent cases i through v) so that Unclassified is deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .degrees import DegreeSpectrum, degree_spectrum
from .errors import BadParams
from .groups import FiniteGroup
from .lattice import FrobeniusShape, SubgroupLattice, cached_all_subgroups
from .numutil import factorize, is_prime


class Case(str, enum.Enum):
    T3_I = "T3.i"
    T3_II = "T3.ii"
    T4_I = "T4.i"
    T4_II = "T4.ii"
    N5_I = "N5.i"
    N5_II = "N5.ii"
    NN5_I = "NN5.i"
    NN5_II = "NN5.ii"
    NN5_III = "NN5.iii"
    NN5_IV_A4 = "NN5.iv-A4"
    NN5_IV_PQ = "NN5.iv-pq"
    NN5_V = "NN5.v"
    L31 = "L31"
    L32 = "L32"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class CaseTag:
    case: Case
    p: int | None = None
    q: int | None = None
    m: int | None = None
    n: int | None = None

    def short(self) -> str:
        parts = [f"{k}={v}" for k, v in
                 (("p", self.p), ("q", self.q), ("m", self.m), ("n", self.n))
                 if v is not None]
        return self.case.value + (f"({','.join(parts)})" if parts else "")


UNCLASSIFIED = CaseTag(Case.UNCLASSIFIED)


@dataclass(frozen=True)
class QuotientShape:
    """Structural summary of the central quotient used by the classifier."""

    order: int
    factorization: tuple[tuple[int, int], ...]
    is_abelian: bool
    exponent: int
    element_orders: frozenset[int]
    elementary_rank: int | None          # rank when elementary abelian
    nonabelian_pq: tuple[int, int] | None  # (p, q) for the unique such group
    is_a4: bool
    frobenius: FrobeniusShape | None


@dataclass(frozen=True)
class ClassificationReport:
    name: str
    order: int
    center_order: int
    tag: CaseTag
    predicted: frozenset[Fraction] | None
    computed: DegreeSpectrum
    verdict: str  # Match | Mismatch | NotApplicable


def quotient_shape(g: FiniteGroup) -> QuotientShape:
    """Compute G/Z(G) and summarize the shapes the classifier needs."""
    q = g.central_quotient().target
    fact = tuple(sorted(factorize(q.order).items()))
    abelian = q.is_abelian()
    exponent = q.exponent()
    orders = frozenset(q.element_orders)
    rank = None
    if abelian and len(fact) == 1 and exponent == fact[0][0]:
        rank = fact[0][1]
    elif q.order == 1:
        rank = 0
    frob_shape = None
    if not abelian:
        frob_shape = cached_all_subgroups(q, cap=q.order).frobenius_shape()
    nonab_pq = None
    if (frob_shape is not None and len(fact) == 2
            and fact[0][1] == 1 and fact[1][1] == 1):
        # unique nonabelian group of order pq; the kernel carries p
        nonab_pq = (frob_shape.kernel.order, frob_shape.complement_order)
    is_a4 = (q.order == 12 and not abelian and q.center().order == 1
             and 6 not in orders)
    return QuotientShape(q.order, fact, abelian, exponent, orders,
                         rank, nonab_pq, is_a4, frob_shape)


# -- predicted spectra --------------------------------------------------------


def _req(cond: bool, msg: str):
    if not cond:
        raise BadParams(msg)


def abelian_maximal_spectrum(p: int, n: int) -> frozenset[Fraction]:
    """Spectrum of a p-group with an abelian maximal subgroup, |G/Z| = p^n.

    Two families: (p^i + p - 1)/p^(i+1) for 0 <= i < n, and
    (p^(j-1) + p - 1)/p^(j+1) + (p-1)/p^n for 1 < j <= n. Cardinality 2n-1.
    """
    _req(is_prime(p), f"p={p} is not prime")
    _req(n >= 2, f"n={n} must be at least 2")
    vals = {Fraction(p ** i + p - 1, p ** (i + 1)) for i in range(n)}
    vals |= {Fraction(p ** (j - 1) + p - 1, p ** (j + 1)) + Fraction(p - 1, p ** n)
             for j in range(2, n + 1)}
    return frozenset(vals)


def uniform_class_spectrum(p: int, m: int, n: int) -> frozenset[Fraction]:
    """Spectrum when all noncentral classes have size p^m and |G/Z| = p^n.

    The n+1 values (p^m + p^i - 1)/p^(m+i) for 0 <= i <= n.
    """
    _req(is_prime(p), f"p={p} is not prime")
    _req(1 <= m <= n, f"m={m} must satisfy 1 <= m <= n={n}")
    return frozenset(Fraction(p ** m + p ** i - 1, p ** (m + i))
                     for i in range(n + 1))


def predicted_spectrum(tag: CaseTag) -> frozenset[Fraction]:
    """Instantiate the case's exact rational value set from its parameters."""
    p, q, m, n = tag.p, tag.q, tag.m, tag.n
    c = tag.case
    if c in (Case.T3_II, Case.T4_II, Case.NN5_I, Case.NN5_II, Case.NN5_III,
             Case.NN5_IV_PQ, Case.NN5_V):
        _req(p is not None and q is not None, "p and q required")
        _req(is_prime(p) and is_prime(q), f"p={p}, q={q} must be prime")
        _req(p != q, "p and q must be distinct")
    elif c not in (Case.UNCLASSIFIED, Case.NN5_IV_A4):
        _req(p is not None and is_prime(p), f"p={p} must be prime")

    if c == Case.T3_I:
        return frozenset({Fraction(1), Fraction(2 * p - 1, p ** 2),
                          Fraction(p * p + p - 1, p ** 3)})
    if c == Case.T3_II:
        return frozenset({Fraction(1), Fraction(p + q - 1, p * q),
                          Fraction(p + q * q - 1, p * q * q)})
    if c == Case.T4_I:
        return frozenset({Fraction(1),
                          Fraction(p * p + p - 1, p ** 3),
                          Fraction(2 * p * p - 1, p ** 4),
                          Fraction(p ** 2 + p ** 3 - 1, p ** 5)})
    if c == Case.T4_II:
        return frozenset({Fraction(1), Fraction(p + q - 1, p * q),
                          Fraction(p * p + q - 1, p * p * q),
                          Fraction(p * p + q * q - 1, p * p * q * q)})
    if c == Case.N5_I:
        return frozenset({Fraction(1), Fraction(2 * p - 1, p ** 2),
                          Fraction(p * p + p - 1, p ** 3),
                          Fraction(3 * p - 2, p ** 3),
                          Fraction(2 * p * p - 1, p ** 4)})
    if c == Case.N5_II:
        _req(m in (1, 2, 3), f"m={m} must be in 1..3")
        return uniform_class_spectrum(p, m, 4)
    if c == Case.NN5_I:
        return frozenset(Fraction(p + q ** i - 1, p * q ** i) for i in range(5))
    if c in (Case.NN5_II, Case.NN5_III):
        return frozenset({Fraction(1), Fraction(p + q - 1, p * q),
                          Fraction(p * p + q - 1, p * p * q),
                          Fraction(p * p + q * q + p * q - p - q, p * p * q * q),
                          Fraction(p * p + q * q - 1, p * p * q * q)})
    if c == Case.NN5_IV_A4:
        return frozenset({Fraction(1), Fraction(7, 12), Fraction(1, 2),
                          Fraction(3, 8), Fraction(7, 24)})
    if c == Case.NN5_IV_PQ:
        _req(p > q, f"p={p} must exceed q={q}")
        # the last value also reproduces the A4 branch at (p,q) = (2,3)
        return frozenset({Fraction(1),
                          Fraction(p * p + q - 1, p * p * q),
                          Fraction(p * q + p - 1, p * p * q),
                          Fraction(p * q + p * p - 1, p ** 3 * q),
                          Fraction(p * q * q + p * p - 1, p ** 3 * q * q)})
    if c == Case.NN5_V:
        return frozenset({Fraction(1), Fraction(p + q - 1, p * q),
                          Fraction(p * p + q - 1, p * p * q),
                          Fraction(p ** 3 + q - 1, p ** 3 * q),
                          Fraction(p ** 3 + q * q - 1, p ** 3 * q * q)})
    if c == Case.L31:
        _req(n is not None, "n required")
        return abelian_maximal_spectrum(p, n)
    if c == Case.L32:
        _req(m is not None and n is not None, "m and n required")
        return uniform_class_spectrum(p, m, n)
    raise BadParams(f"no predicted spectrum for {c.value}")


# -- classification -----------------------------------------------------------


def _has_abelian_maximal(g: FiniteGroup, lat: SubgroupLattice) -> bool:
    mul = g.mul
    for s in lat.maximal_subgroups():
        elems = s.elements()
        if all(mul[x][y] == mul[y][x] for x in elems for y in elems):
            return True
    return False


def _sylow_abelian(g: FiniteGroup, lat: SubgroupLattice, p: int) -> bool:
    s = lat.sylow_subgroup(p)
    mul = g.mul
    elems = s.elements()
    return all(mul[x][y] == mul[y][x] for x in elems for y in elems)


def _two_class_sizes(g: FiniteGroup) -> int | None:
    """The common noncentral class size when there is exactly one, else None."""
    sizes = {len(c) for c in g.conjugacy_classes() if len(c) > 1}
    if len(sizes) == 1:
        return sizes.pop()
    return None


def _quotient_normal_order_p(g: FiniteGroup, p: int) -> bool:
    """Does G/Z(G) have a normal subgroup of order p?"""
    q = g.central_quotient().target
    qlat = cached_all_subgroups(q, cap=q.order)
    return any(s.order == p and qlat.is_normal(s) for s in qlat.subgroups)


def classify(g: FiniteGroup, lat: SubgroupLattice) -> CaseTag:
    """First matching structural case, or Unclassified.

    Predicates follow the case table in the module docstring; parameters
    are read off the quotient's factorization and its Frobenius
    kernel/complement orders.
    """
    if g.is_abelian():
        return UNCLASSIFIED
    shape = quotient_shape(g)
    fact = dict(shape.factorization)

    if g.is_nilpotent():
        if len(fact) != 1:
            return UNCLASSIFIED
        p, e = next(iter(fact.items()))
        if e == 2:
            return CaseTag(Case.T3_I, p=p)
        if e == 3:
            if _has_abelian_maximal(g, lat):
                return CaseTag(Case.N5_I, p=p)
            return CaseTag(Case.T4_I, p=p)
        size = _two_class_sizes(g)
        if size is not None and size == p ** _exact_log(size, p):
            m = _exact_log(size, p)
            if e == 4:
                return CaseTag(Case.N5_II, p=p, m=m)
            return CaseTag(Case.L32, p=p, m=m, n=e)
        if _has_abelian_maximal(g, lat):
            return CaseTag(Case.L31, p=p, n=e)
        return UNCLASSIFIED

    # non-nilpotent: everything hinges on the Frobenius shape of G/Z
    if shape.nonabelian_pq is not None:
        p, q = shape.nonabelian_pq
        return CaseTag(Case.T3_II, p=p, q=q)
    frob = shape.frobenius
    if frob is None or len(fact) != 2:
        return UNCLASSIFIED
    kernel = frob.kernel
    comp = frob.complement_order
    kernel_fact = factorize(kernel.order)
    comp_fact = factorize(comp)
    if len(kernel_fact) != 1 or len(comp_fact) != 1:
        return UNCLASSIFIED
    p = next(iter(kernel_fact))
    q = next(iter(comp_fact))
    quotient = g.central_quotient().target
    kernel_elem_orders = {quotient.element_orders[x] for x in kernel.elements()}

    if kernel.order == p and comp == q * q:
        return CaseTag(Case.NN5_I, p=p, q=q)
    if kernel.order == p * p and comp == q:
        if p * p in kernel_elem_orders:      # cyclic kernel
            return CaseTag(Case.NN5_II, p=p, q=q)
        # elementary abelian kernel of rank 2
        if frob.is_minimal:
            if _sylow_abelian(g, lat, p):
                return CaseTag(Case.T4_II, p=p, q=q)
            if shape.is_a4:
                return CaseTag(Case.NN5_IV_A4, p=p, q=q)
            if p > q:
                return CaseTag(Case.NN5_IV_PQ, p=p, q=q)
            return UNCLASSIFIED
        if _quotient_normal_order_p(g, p) and _sylow_abelian(g, lat, p):
            return CaseTag(Case.NN5_III, p=p, q=q)
        return UNCLASSIFIED
    if (kernel.order == p ** 3 and comp == q and frob.is_minimal
            and kernel_elem_orders == {1, p} and _sylow_abelian(g, lat, p)):
        return CaseTag(Case.NN5_V, p=p, q=q)
    return UNCLASSIFIED


def _exact_log(value: int, p: int) -> int:
    k = 0
    while value > 1 and value % p == 0:
        value //= p
        k += 1
    return k if value == 1 else 0


def verify_classification(g: FiniteGroup, lat: SubgroupLattice,
                          name: str = "") -> ClassificationReport:
    """Classify, compute the spectrum, and compare with the case formula."""
    tag = classify(g, lat)
    spec = degree_spectrum(g, lat)
    if tag.case is Case.UNCLASSIFIED:
        return ClassificationReport(name or g.name, g.order, g.center().order,
                                    tag, None, spec, "NotApplicable")
    predicted = predicted_spectrum(tag)
    verdict = "Match" if predicted == spec.as_set() else "Mismatch"
    return ClassificationReport(name or g.name, g.order, g.center().order,
                                tag, predicted, spec, verdict)
