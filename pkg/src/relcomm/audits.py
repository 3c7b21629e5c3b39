"""Audits of the structural inequalities and product-spectrum identities.

Each check returns an :class:`AuditRecord`; a failed check carries a
witness, never an exception. Hypothesis failures (a check applied to a
group outside its stated scope) raise :class:`Inapplicable` instead.

The chain bound compares |D(G)| with the longest subgroup chain of
G/Z(G). The omega bound reads Z(H,G) as H intersect Z(G) throughout;
every record repeats that interpretation in its detail payload.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .degrees import all_relative_degrees, degree_spectrum
from .errors import Inapplicable, NotCoprime
from .groups import FiniteGroup, direct_product
from .lattice import DEFAULT_LATTICE_CAP, cached_all_subgroups
from .numutil import factorize, is_prime, omega

OMEGA_NOTE = "Z(H,G) interpreted as the intersection of H with Z(G)"


@dataclass(frozen=True)
class AuditRecord:
    subject: str
    check: str
    holds: bool
    witness: object = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.holds and self.witness is None:
            raise ValueError("failed audits must carry a witness")


def check_chain_bound(g: FiniteGroup, name: str = "",
                      cap: int = DEFAULT_LATTICE_CAP) -> AuditRecord:
    """|D(G)| >= l_M(G/Z(G)) + 1."""
    lat = cached_all_subgroups(g, cap=cap)
    spectrum_size = len(degree_spectrum(g, lat))
    quotient = g.central_quotient().target
    chain = cached_all_subgroups(quotient, cap=cap).max_chain_length()
    holds = spectrum_size >= chain + 1
    return AuditRecord(
        subject=name or g.name, check="ChainBound", holds=holds,
        witness=None if holds else {"spectrumSize": spectrum_size,
                                    "chainLength": chain},
        detail={"spectrumSize": spectrum_size, "chainLength": chain,
                "required": chain + 1})


def check_omega_bound(g: FiniteGroup, name: str = "",
                      cap: int = DEFAULT_LATTICE_CAP) -> AuditRecord:
    """For d(H,G) = d_k: |H / (H n Z(G))| is a product of at most k primes."""
    lat = cached_all_subgroups(g, cap=cap)
    degrees = all_relative_degrees(g, lat)
    position = {v: i for i, v in
                enumerate(sorted(set(degrees), reverse=True))}
    zmask = g.center().mask
    worst = (-1, None)
    for sub, d in zip(lat.subgroups, degrees):
        k = position[d]
        quotient_size = sub.order // (sub.mask & zmask).bit_count()
        budget = k - omega(quotient_size)
        if worst[1] is None or budget < worst[0]:
            worst = (budget, {"subgroupOrder": sub.order, "k": k,
                              "omega": omega(quotient_size),
                              "mask": sub.mask})
    holds = worst[0] >= 0
    return AuditRecord(
        subject=name or g.name, check="OmegaBound", holds=holds,
        witness=None if holds else worst[1],
        detail={"subgroups": len(lat), "spectrumSize": len(position),
                "minSlack": worst[0], "interpretation": OMEGA_NOTE})


def product_spectrum(h: FiniteGroup, k: FiniteGroup,
                     cap: int = DEFAULT_LATTICE_CAP) -> AuditRecord:
    """D(H x K) equals the elementwise product of D(H) and D(K), and the
    two spectra share only the value 1 (coprime orders required)."""
    if math.gcd(h.order, k.order) != 1:
        raise NotCoprime(f"|H|={h.order} and |K|={k.order} share a factor")
    product = direct_product(h, k, cap=max(h.order * k.order, 2))
    dh = degree_spectrum(h, cached_all_subgroups(h, cap=cap)).as_set()
    dk = degree_spectrum(k, cached_all_subgroups(k, cap=cap)).as_set()
    dhk = degree_spectrum(product, cached_all_subgroups(product, cap=cap)).as_set()
    expected = frozenset(a * b for a in dh for b in dk)
    intersection = dh & dk
    holds = dhk == expected and intersection == {Fraction(1)}
    return AuditRecord(
        subject=f"{h.name} x {k.name}", check="ProductSpectrum", holds=holds,
        witness=None if holds else {
            "missing": sorted(str(v) for v in expected - dhk),
            "extra": sorted(str(v) for v in dhk - expected),
            "intersectionSize": len(intersection)},
        detail={"sizeH": len(dh), "sizeK": len(dk), "sizeProduct": len(dhk)})


def product_cardinality_delta(h: FiniteGroup, k: FiniteGroup,
                              cap: int = DEFAULT_LATTICE_CAP) -> int:
    """|D(H x K)| - |D(H)| * |D(K)|; coprimality is not required."""
    product = direct_product(h, k, cap=max(h.order * k.order, 2))
    dh = len(degree_spectrum(h, cached_all_subgroups(h, cap=cap)))
    dk = len(degree_spectrum(k, cached_all_subgroups(k, cap=cap)))
    dhk = len(degree_spectrum(product, cached_all_subgroups(product, cap=cap)))
    return dhk - dh * dk


def check_prime_power_orders(g: FiniteGroup, name: str = "",
                             cap: int = DEFAULT_LATTICE_CAP) -> AuditRecord:
    """Non-nilpotent, |D(G)| = 5: element orders of G/Z lie in {p, p^2, q, q^2}.

    Raises :class:`Inapplicable` when the hypotheses fail.
    """
    if g.is_nilpotent():
        raise Inapplicable(f"{name or g.name} is nilpotent")
    lat = cached_all_subgroups(g, cap=cap)
    size = len(degree_spectrum(g, lat))
    if size != 5:
        raise Inapplicable(f"{name or g.name} has {size} degrees, not 5")
    quotient = g.central_quotient().target
    primes = sorted(factorize(quotient.order))
    allowed = {1}
    for p in primes:
        allowed |= {p, p * p}
    orders = sorted(set(quotient.element_orders))
    bad = [o for o in orders if o not in allowed]
    holds = len(primes) <= 2 and not bad
    return AuditRecord(
        subject=name or g.name, check="PrimePowerOrders", holds=holds,
        witness=None if holds else {"badOrders": bad, "primes": primes},
        detail={"quotientOrder": quotient.order, "elementOrders": orders})


def check_distinct_prime_degrees(g: FiniteGroup, name: str = "") -> AuditRecord:
    """Elements of distinct prime order in G/Z whose centralizer images have
    prime power orders: either |G/Z| = pq or the cyclic degrees differ."""
    qm = g.central_quotient()
    quotient = qm.target
    zorder = g.center().order
    qfact = factorize(quotient.order)
    pq = (len(qfact) == 2 and all(e == 1 for e in qfact.values()))
    sizes = g.centralizer_sizes()
    candidates = []
    cyclic_degree: dict[int, Fraction] = {}
    for x in range(1, g.order):
        bar_order = quotient.element_orders[qm.projection[x]]
        if not is_prime(bar_order):
            continue
        # image of C_G(x) in the quotient has order |C_G(x)| / |Z|
        if len(factorize(sizes[x] // zorder)) > 1:
            continue
        sub = g.generated_subgroup([x])
        cyclic_degree[x] = Fraction(sum(sizes[e] for e in sub.elements()),
                                    sub.order * g.order)
        candidates.append((x, bar_order))
    witness = None
    for i, (x, px) in enumerate(candidates):
        for y, py in candidates[i + 1:]:
            if px == py:
                continue
            if pq:
                continue
            if cyclic_degree[x] == cyclic_degree[y]:
                witness = {"x": x, "y": y, "px": px, "py": py,
                           "degree": str(cyclic_degree[x])}
                break
        if witness:
            break
    return AuditRecord(
        subject=name or g.name, check="DistinctPrimeDegrees",
        holds=witness is None, witness=witness,
        detail={"quotientOrder": quotient.order, "isPQ": pq,
                "candidates": len(candidates)})
