"""Exact commutativity degrees d(G), d(H,G), d(H,K) and the spectrum D(G).

Every degree is an exact rational (``fractions.Fraction``, arbitrary
precision, always in lowest terms). The workhorse identity: with
centralizer sizes |C_G(x)| precomputed once per group,

    d(H, G) = sum(|C_G(x)| for x in H) / (|H| |G|),

so each relative degree is a single pass over H. ``pair_count_oracle``
is the independent check: a literal double loop over H x G counting
commuting pairs, kept free of any precomputation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotNested
from .groups import FiniteGroup, Subgroup
from .lattice import SubgroupLattice

Rat = Fraction

ONE = Fraction(1)


def rat_str(q: Fraction) -> str:
    """Serialize as "num/den" in lowest terms, denominator always shown."""
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class DegreeSpectrum:
    """Distinct values of d(H,G) in strictly decreasing order, with witnesses.

    The witness for a value is the subgroup of smallest order (ties broken
    by least bitset) attaining it. values[0] is always 1; the last value
    is d(G).
    """

    values: tuple[Fraction, ...]
    witnesses: tuple[Subgroup, ...]

    def __post_init__(self):
        if not self.values or self.values[0] != 1:
            raise ValueError("spectrum must start at 1")
        if any(later >= earlier for later, earlier in zip(self.values[1:], self.values)):
            raise ValueError("spectrum values must be strictly decreasing")
        if len(self.values) != len(self.witnesses):
            raise ValueError("one witness per value required")

    def __len__(self):
        return len(self.values)

    def as_set(self) -> frozenset[Fraction]:
        return frozenset(self.values)

    def min(self) -> Fraction:
        return self.values[-1]


def comm_degree(g: FiniteGroup) -> Fraction:
    """d(G) = k(G)/|G| where k(G) is the number of conjugacy classes."""
    return Fraction(len(g.conjugacy_classes()), g.order)


def rel_comm_degree(g: FiniteGroup, h: Subgroup) -> Fraction:
    """d(H,G): probability that a random element of H commutes with one of G."""
    if h.parent_order != g.order:
        raise NotNested(f"subgroup of a group of order {h.parent_order} "
                        f"used inside a group of order {g.order}")
    sizes = g.centralizer_sizes()
    total = sum(sizes[x] for x in h.elements())
    return Fraction(total, h.order * g.order)


def rel_comm_degree_within(g: FiniteGroup, k: Subgroup, h: Subgroup) -> Fraction:
    """d(H,K) computed inside the subgroup K: centralizers taken in K."""
    if k.parent_order != g.order or h.parent_order != g.order:
        raise NotNested("subgroups belong to a different parent group")
    if h.mask & k.mask != h.mask:
        raise NotNested("H is not contained in K")
    masks = g.centralizer_masks()
    kmask = k.mask
    total = sum((masks[x] & kmask).bit_count() for x in h.elements())
    return Fraction(total, h.order * k.order)


def pair_count_oracle(g: FiniteGroup, h: Subgroup) -> Fraction:
    """Literal double loop over H x G counting commuting pairs.

    Deliberately independent of the centralizer precomputation; this is
    the oracle every other degree computation is checked against.
    """
    mul = g.mul
    count = 0
    for x in h.elements():
        row = mul[x]
        for y in range(g.order):
            if row[y] == mul[y][x]:
                count += 1
    return Fraction(count, h.order * g.order)


def all_relative_degrees(g: FiniteGroup, lat: SubgroupLattice) -> list[Fraction]:
    """d(H,G) for every lattice member, parallel to ``lat.subgroups``."""
    if lat.parent is not g:
        raise ValueError("lattice belongs to a different group")
    sizes = g.centralizer_sizes()
    n = g.order
    out = []
    for i, s in enumerate(lat.subgroups):
        total = sum(sizes[x] for x in lat.elements_of(i))
        out.append(Fraction(total, s.order * n))
    return out


def degree_spectrum(g: FiniteGroup, lat: SubgroupLattice,
                    central_dedup: bool = False) -> DegreeSpectrum:
    """D(G): distinct d(H,G) over all subgroups, decreasing, with witnesses.

    With ``central_dedup`` the degree sum is evaluated only on subgroups
    containing the center; every other subgroup H inherits the value of
    HZ(G), which always lies in the lattice. Output is identical either
    way (the identity d(H,G) = d(HZ,G) makes the skip sound).
    """
    if lat.parent is not g:
        raise ValueError("lattice belongs to a different group")
    sizes = g.centralizer_sizes()
    n = g.order
    zmask = g.center().mask
    mul = g.mul
    value_of: dict[int, Fraction] = {}
    if central_dedup:
        for i, s in enumerate(lat.subgroups):
            if s.mask & zmask == zmask:
                total = sum(sizes[x] for x in lat.elements_of(i))
                value_of[s.mask] = Fraction(total, s.order * n)
    best: dict[Fraction, Subgroup] = {}
    zelems = Subgroup(n, zmask).elements()
    for i, s in enumerate(lat.subgroups):
        if central_dedup:
            d = value_of.get(s.mask)
            if d is None:
                hz = 0
                for x in lat.elements_of(i):
                    row = mul[x]
                    for z in zelems:
                        hz |= 1 << row[z]
                d = value_of[hz]
        else:
            total = sum(sizes[x] for x in lat.elements_of(i))
            d = Fraction(total, s.order * n)
        # lattice order is (order, mask): first subgroup seen wins
        if d not in best:
            best[d] = s
    ordered = sorted(best.items(), key=lambda kv: kv[0], reverse=True)
    return DegreeSpectrum(tuple(v for v, _ in ordered),
                          tuple(w for _, w in ordered))
