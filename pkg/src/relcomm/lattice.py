"""Full subgroup lattice enumeration and structural queries on it.

Enumeration seeds with every cyclic subgroup and repeatedly joins known
subgroups with cyclic subgroups of prime power order until no new
subgroup appears. A join <A, c> is computed coset by coset: the result
is a disjoint union of right cosets of A, found by a Schreier-style walk
over coset representatives. Subgroups are deduplicated by their
membership bitset.

The cover relation (each subgroup's maximal proper subgroups) is
computed lazily by order-stratified containment tests; chain length is
a longest-path pass over it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import LatticeCapExceeded, NoSuchPrime
from .groups import FiniteGroup, Subgroup
from .numutil import divisors, factorize, is_prime, p_part

DEFAULT_LATTICE_CAP = 768


@dataclass(frozen=True)
class FrobeniusShape:
    """Frobenius kernel data: the kernel, the complement order, minimality.

    Minimal means: kernel elementary abelian, complements of prime order,
    and both the kernel and the complements are maximal subgroups.
    """

    kernel: Subgroup
    complement_order: int
    is_minimal: bool


def _cyclic_masks(g: FiniteGroup) -> dict[int, tuple[int, ...]]:
    """mask -> sorted element tuple for every cyclic subgroup of g."""
    mul = g.mul
    out: dict[int, tuple[int, ...]] = {}
    for x in range(g.order):
        y = x
        mask = 1
        elems = [0]
        while y != 0:
            mask |= 1 << y
            elems.append(y)
            y = mul[y][x]
        if mask not in out:
            out[mask] = tuple(sorted(elems))
    return out


def _extend(elems, mask, gens, c, mul, order):
    """Elements/mask/gens of the subgroup generated by a subgroup and c.

    ``elems`` must list a genuine subgroup containing the identity and
    ``gens`` a generating sequence for it. Returns (elements, mask, gens)
    of the join; elements are in coset-discovery order.
    """
    if mask >> c & 1:
        return elems, mask, gens
    new_gens = gens + (c,)
    elements = list(elems)
    reps = [0]
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for t in new_gens:
            rt = mul[r][t]
            if not mask >> rt & 1:
                coset = [mul[a][rt] for a in elems]
                for e in coset:
                    mask |= 1 << e
                elements.extend(coset)
                reps.append(rt)
                if len(elements) == order:
                    return elements, mask, new_gens
    return elements, mask, new_gens


class SubgroupLattice:
    """All subgroups of ``parent``, sorted by (order, bitset)."""

    def __init__(self, parent: FiniteGroup, subgroup_masks, element_lists):
        self.parent = parent
        order_key = sorted(range(len(subgroup_masks)),
                           key=lambda i: (len(element_lists[i]), subgroup_masks[i]))
        self.subgroups = [Subgroup(parent.order, subgroup_masks[i]) for i in order_key]
        self._elements = [tuple(sorted(element_lists[i])) for i in order_key]
        self._index = {s.mask: i for i, s in enumerate(self.subgroups)}
        self._cover: list[list[int]] | None = None

    def __len__(self):
        return len(self.subgroups)

    def index_of(self, sub: Subgroup) -> int:
        return self._index[sub.mask]

    def elements_of(self, i: int) -> tuple[int, ...]:
        """Sorted element tuple of the i-th subgroup."""
        return self._elements[i]

    # -- cover relation -------------------------------------------------

    def maximal_of(self) -> list[list[int]]:
        """For each subgroup, the lattice indices of its maximal proper subgroups."""
        if self._cover is None:
            subs = self.subgroups
            by_order: dict[int, list[int]] = {}
            for i, s in enumerate(subs):
                by_order.setdefault(s.order, []).append(i)
            cover: list[list[int]] = []
            for i, s in enumerate(subs):
                mask = s.mask
                found: list[int] = []
                found_masks: list[int] = []
                for d in sorted((d for d in divisors(s.order) if d < s.order),
                                reverse=True):
                    for j in by_order.get(d, ()):
                        mj = subs[j].mask
                        if mj & mask == mj and not any(
                                mj & fm == mj for fm in found_masks):
                            found.append(j)
                            found_masks.append(mj)
                cover.append(found)
            self._cover = cover
        return self._cover

    def maximal_subgroups(self) -> list[Subgroup]:
        """Subgroups covered only by the whole group."""
        top = self._index[(1 << self.parent.order) - 1]
        return [self.subgroups[j] for j in self.maximal_of()[top]]

    def max_chain_length(self) -> int:
        """Longest chain 1 = H_0 < ... < H_l = G, counting strict inclusions."""
        cover = self.maximal_of()
        depth = [0] * len(self.subgroups)
        # subgroups are sorted by order, so covers are already computed
        for i in range(len(self.subgroups)):
            below = cover[i]
            if below:
                depth[i] = 1 + max(depth[j] for j in below)
        return depth[self._index[(1 << self.parent.order) - 1]]

    # -- named subgroups --------------------------------------------------

    def sylow_subgroup(self, p: int) -> Subgroup:
        if not is_prime(p) or self.parent.order % p != 0:
            raise NoSuchPrime(f"{p} is not a prime divisor of {self.parent.order}")
        target = p_part(self.parent.order, p)
        for s in self.subgroups:
            if s.order == target:
                return s
        raise AssertionError("lattice is missing a Sylow subgroup")

    def is_normal(self, sub: Subgroup) -> bool:
        return is_normal(self.parent, sub)

    def frobenius_shape(self) -> FrobeniusShape | None:
        """The Frobenius kernel shape, or None when the group is not Frobenius.

        The kernel criterion: a proper nontrivial normal subgroup N of
        order coprime to its index whose non-identity members have their
        centralizers inside N.
        """
        g = self.parent
        n = g.order
        cent = g.centralizer_masks()
        for s in self.subgroups:
            if s.order in (1, n) or n % s.order or math.gcd(s.order, n // s.order) != 1:
                continue
            if not is_normal(g, s):
                continue
            mask = s.mask
            if all(cent[x] & mask == cent[x] for x in s.elements() if x != 0):
                comp_order = n // s.order
                return FrobeniusShape(s, comp_order, self._kernel_minimal(s, comp_order))
        return None

    def _kernel_minimal(self, kernel: Subgroup, comp_order: int) -> bool:
        g = self.parent
        if not is_prime(comp_order):
            return False
        p_factors = factorize(kernel.order)
        if len(p_factors) != 1:
            return False
        p = next(iter(p_factors))
        elems = kernel.elements()
        orders = g.element_orders
        mul = g.mul
        if any(orders[x] != p for x in elems if x != 0):
            return False
        if not all(mul[x][y] == mul[y][x] for x in elems for y in elems):
            return False
        maximal_masks = {s.mask for s in self.maximal_subgroups()}
        if kernel.mask not in maximal_masks:
            return False
        complement = next(
            (s for s in self.subgroups
             if s.order == comp_order and s.mask & kernel.mask == 1), None)
        return complement is not None and complement.mask in maximal_masks


def is_normal(g: FiniteGroup, sub: Subgroup) -> bool:
    """Conjugation stability of the subgroup under every element of g."""
    mul = g.mul
    inv = g.inv
    mask = sub.mask
    elems = sub.elements()
    for t in range(g.order):
        row = mul[t]
        it = inv[t]
        for x in elems:
            if not mask >> mul[row[x]][it] & 1:
                return False
    return True


def all_subgroups(g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """Enumerate every subgroup of g.

    Raises :class:`LatticeCapExceeded` when g.order exceeds ``cap``.
    """
    if g.order > cap:
        raise LatticeCapExceeded(
            f"group order {g.order} exceeds lattice cap {cap}")
    n = g.order
    mul = [list(row) for row in g.mul]
    cyc = _cyclic_masks(g)
    orders = g.element_orders

    # atoms: one generator per cyclic subgroup of prime power order
    atom_of: dict[int, int] = {}
    for x in range(1, n):
        o = orders[x]
        if len(factorize(o)) == 1:
            y = x
            m = 1
            while y != 0:
                m |= 1 << y
                y = mul[y][x]
            if m not in atom_of:
                atom_of[m] = x
    atoms = sorted(atom_of.items())

    subs: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    queue: list[int] = []
    for mask, elems in sorted(cyc.items()):
        gens = () if mask == 1 else (max(elems, key=lambda e: orders[e]),)
        # the stored generator must actually generate: use the element of
        # maximal order in the cyclic subgroup
        subs[mask] = (elems, gens)
        queue.append(mask)

    qi = 0
    while qi < len(queue):
        amask = queue[qi]
        qi += 1
        elems, gens = subs[amask]
        for cmask, c in atoms:
            if cmask & amask == cmask:
                continue
            new_elems, new_mask, new_gens = _extend(elems, amask, gens, c, mul, n)
            if new_mask not in subs:
                subs[new_mask] = (tuple(new_elems), new_gens)
                queue.append(new_mask)

    masks = list(subs.keys())
    element_lists = [subs[m][0] for m in masks]
    return SubgroupLattice(g, masks, element_lists)


def cached_all_subgroups(g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """Like :func:`all_subgroups` but memoized on the group object."""
    lat = g._cache.get("lattice")
    if lat is None:
        lat = all_subgroups(g, cap=cap)
        g._cache["lattice"] = lat
    return lat


def all_subgroups_two_generated(g: FiniteGroup) -> set[int]:
    """Independent second-pass enumeration: masks of all subgroups.

    Seeds with every two-generated subgroup found by plain worklist
    closure, then joins current subgroups with the seeds until fixpoint.
    No coset structure and no generator bookkeeping, so it shares no
    machinery with :func:`all_subgroups`; used as a cross-check.
    """
    n = g.order
    mul = g.mul

    def close(base_mask, base_elems, extra):
        # base is already closed; only products touching new elements matter
        mask = base_mask
        elems = list(base_elems)
        i = len(elems)
        for s in extra:
            if not mask >> s & 1:
                mask |= 1 << s
                elems.append(s)
        while i < len(elems):
            u = elems[i]
            i += 1
            row = mul[u]
            for v in elems[:]:
                for w in (row[v], mul[v][u]):
                    if not mask >> w & 1:
                        mask |= 1 << w
                        elems.append(w)
        return mask, elems

    seeds: dict[int, list[int]] = {1: [0]}
    for x in range(1, n):
        for y in range(x, n):
            mask, elems = close(1, [0], (x, y))
            if mask not in seeds:
                seeds[mask] = elems

    known: dict[int, list[int]] = dict(seeds)
    frontier = list(seeds.items())
    full = (1 << n) - 1
    while frontier:
        next_frontier = []
        for amask, aelems in frontier:
            if amask == full:
                continue
            for smask, selems in seeds.items():
                if smask & amask == smask or (amask | smask) in known:
                    continue
                mask, elems = close(amask, aelems, selems)
                if mask not in known:
                    known[mask] = elems
                    next_frontier.append((mask, elems))
        frontier = next_frontier
    return set(known.keys())
