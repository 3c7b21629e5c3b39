"""Finite groups as dense multiplication tables over element indices.

Elements are the integers 0..n-1 with the identity always at index 0.
Multiplication is a full n by n lookup table, so every product costs one
index operation. Groups are immutable once constructed and cache derived
structure (centralizers, classes, the central quotient) on first use.

``from_table`` is the only entry point that accepts untrusted input; it
checks the group axioms (exhaustively up to order 256, on 10**5 seeded
random triples above that) and relabels the identity to index 0. All
other builders produce valid tables by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NotAGroup,
    NotAHomomorphism,
    NotAnAutomorphism,
    OrderCapExceeded,
)

DEFAULT_ORDER_CAP = 1024

# above this order the associativity check is sampled, not exhaustive
_EXHAUSTIVE_ASSOC_LIMIT = 256
_ASSOC_SAMPLES = 100_000


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a fixed parent group, stored as a membership bitset.

    ``mask`` has bit x set iff element x belongs to the subgroup. The
    parent is identified only by its order; closure under the parent's
    multiplication is the constructor's responsibility.
    """

    parent_order: int
    mask: int

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def elements(self) -> list[int]:
        m = self.mask
        out = []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def is_subset_of(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask


@dataclass(frozen=True)
class QuotientMap:
    """Surjective homomorphism from ``source`` onto ``target``.

    ``projection[x]`` is the target index of the coset containing x.
    """

    source: "FiniteGroup"
    target: "FiniteGroup"
    projection: tuple[int, ...]

    def fiber_size(self) -> int:
        return self.source.order // self.target.order


class FiniteGroup:
    """Immutable finite group on indices 0..order-1, identity at 0."""

    __slots__ = ("order", "mul", "inv", "element_orders", "name", "_cache")

    def __init__(self, mul, name=""):
        """Wrap a trusted multiplication table (rows of element indices).

        The table must already satisfy the group axioms with identity at
        index 0; use :func:`from_table` for untrusted input.
        """
        rows = tuple(tuple(row) for row in mul)
        n = len(rows)
        self.order = n
        self.mul = rows
        self.name = name
        inv = [0] * n
        orders = [0] * n
        for x in range(n):
            # walk the cyclic subgroup of x; the element before the
            # identity is the inverse
            y = x
            k = 1
            prev = 0
            row_lookup = rows[x]
            while y != 0:
                prev = y
                y = row_lookup[y]
                k += 1
                if k > n:
                    raise NotAGroup(f"element {x} has no finite order under table")
            # identity itself: loop body never ran, x^1 = e
            if x == 0:
                orders[x] = 1
                inv[x] = 0
            else:
                orders[x] = k
                inv[x] = prev
        self.inv = tuple(inv)
        self.element_orders = tuple(orders)
        self._cache = {}

    # -- basic queries -------------------------------------------------

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        out = 0
        mul = self.mul
        while k:
            if k & 1:
                out = mul[out][x]
            x = mul[x][x]
            k >>= 1
        return out

    def is_abelian(self) -> bool:
        cached = self._cache.get("abelian")
        if cached is None:
            mul = self.mul
            n = self.order
            cached = all(mul[x][y] == mul[y][x] for x in range(n) for y in range(x))
            self._cache["abelian"] = cached
        return cached

    # -- centralizers and classes ---------------------------------------

    def centralizer_masks(self) -> list[int]:
        """Bitset of the centralizer of each element (cached, O(n^2))."""
        masks = self._cache.get("cent_masks")
        if masks is None:
            mul = self.mul
            n = self.order
            masks = []
            for x in range(n):
                row = mul[x]
                m = 0
                for y in range(n):
                    if row[y] == mul[y][x]:
                        m |= 1 << y
                masks.append(m)
            self._cache["cent_masks"] = masks
        return masks

    def centralizer_sizes(self) -> list[int]:
        sizes = self._cache.get("cent_sizes")
        if sizes is None:
            sizes = [m.bit_count() for m in self.centralizer_masks()]
            self._cache["cent_sizes"] = sizes
        return sizes

    def centralizer(self, x: int) -> Subgroup:
        if not 0 <= x < self.order:
            raise ValueError(f"element index {x} out of range")
        return Subgroup(self.order, self.centralizer_masks()[x])

    def center(self) -> Subgroup:
        mask = self._cache.get("center_mask")
        if mask is None:
            full = (1 << self.order) - 1
            mask = 0
            for x, m in enumerate(self.centralizer_masks()):
                if m == full:
                    mask |= 1 << x
            self._cache["center_mask"] = mask
        return Subgroup(self.order, mask)

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Orbits under conjugation, each sorted, ordered by least element."""
        classes = self._cache.get("classes")
        if classes is None:
            n = self.order
            mul = self.mul
            inv = self.inv
            seen = 0
            out = []
            for x in range(n):
                if seen >> x & 1:
                    continue
                orbit = set()
                for g in range(n):
                    orbit.add(mul[mul[g][x]][inv[g]])
                for y in orbit:
                    seen |= 1 << y
                out.append(tuple(sorted(orbit)))
            classes = tuple(out)
            self._cache["classes"] = classes
        return classes

    def class_sizes(self) -> list[int]:
        """Conjugacy class size of each element."""
        sizes = self._cache.get("class_sizes_by_elem")
        if sizes is None:
            sizes = [0] * self.order
            for cls in self.conjugacy_classes():
                for x in cls:
                    sizes[x] = len(cls)
            self._cache["class_sizes_by_elem"] = sizes
        return sizes

    # -- quotients -------------------------------------------------------

    def central_quotient(self) -> QuotientMap:
        """The factor group modulo the center, with the coset projection."""
        qm = self._cache.get("central_quotient")
        if qm is None:
            qm = self._quotient_by_mask(self.center().mask, name_suffix="/Z")
            self._cache["central_quotient"] = qm
        return qm

    def _quotient_by_mask(self, normal_mask: int, name_suffix: str = "/N") -> QuotientMap:
        """Quotient by a normal subgroup given as a bitset (trusted)."""
        n = self.order
        mul = self.mul
        normal = Subgroup(n, normal_mask).elements()
        proj = [-1] * n
        reps = []
        for x in range(n):
            if proj[x] >= 0:
                continue
            idx = len(reps)
            reps.append(x)
            row = mul[x]
            for z in normal:
                proj[row[z]] = idx
        k = len(reps)
        table = [[proj[mul[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
        target = FiniteGroup(table, name=(self.name + name_suffix) if self.name else "")
        return QuotientMap(self, target, tuple(proj))

    # -- structural predicates --------------------------------------------

    def is_nilpotent(self) -> bool:
        """True iff every Sylow subgroup is normal.

        Tested via the equivalent criterion that any two elements of
        coprime orders commute, which needs no subgroup enumeration.
        """
        cached = self._cache.get("nilpotent")
        if cached is None:
            mul = self.mul
            orders = self.element_orders
            n = self.order
            cached = True
            for x in range(1, n):
                ox = orders[x]
                row = mul[x]
                for y in range(1, x):
                    if math.gcd(ox, orders[y]) == 1 and row[y] != mul[y][x]:
                        cached = False
                        break
                if not cached:
                    break
            self._cache["nilpotent"] = cached
        return cached

    def exponent(self) -> int:
        out = 1
        for k in self.element_orders:
            out = math.lcm(out, k)
        return out

    # -- subgroup helpers --------------------------------------------------

    def generated_mask(self, generators) -> int:
        """Bitset of the subgroup generated by the given elements.

        Plain worklist closure; quadratic in the result size.
        """
        mul = self.mul
        mask = 1
        elems = [0]
        queue = list(dict.fromkeys(g for g in generators if not mask >> g & 1))
        for g in queue:
            mask |= 1 << g
            elems.append(g)
        i = 1
        while i < len(elems):
            u = elems[i]
            i += 1
            row = mul[u]
            for v in list(elems):
                for w in (row[v], mul[v][u]):
                    if not mask >> w & 1:
                        mask |= 1 << w
                        elems.append(w)
        return mask

    def generated_subgroup(self, generators) -> Subgroup:
        return Subgroup(self.order, self.generated_mask(generators))

    def subgroup(self, members) -> Subgroup:
        """Wrap an explicit member set, verifying closure and inverses."""
        mask = 0
        for x in members:
            mask |= 1 << x
        if not mask & 1:
            raise ValueError("subgroup must contain the identity")
        sub = Subgroup(self.order, mask)
        mul = self.mul
        for x in sub.elements():
            if not mask >> self.inv[x] & 1:
                raise ValueError(f"member set not closed under inverse at {x}")
            row = mul[x]
            for y in sub.elements():
                if not mask >> row[y] & 1:
                    raise ValueError(f"member set not closed at product {x}*{y}")
        return sub

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self.order, 1)

    def full_subgroup(self) -> Subgroup:
        return Subgroup(self.order, (1 << self.order) - 1)

    def __repr__(self):
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"


# -- validation ------------------------------------------------------------


def _find_identity(table) -> int | None:
    n = len(table)
    ref = list(range(n))
    for e in range(n):
        if list(table[e]) == ref and all(table[x][e] == x for x in range(n)):
            return e
    return None


def _check_associativity(arr: np.ndarray) -> None:
    n = arr.shape[0]
    if n <= _EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            lhs = arr[arr[a]]          # (a*b)*c for all b, c
            rhs = arr[a][arr]          # a*(b*c)
            if not np.array_equal(lhs, rhs):
                bad = np.argwhere(lhs != rhs)
                b, c = int(bad[0][0]), int(bad[0][1])
                raise NotAGroup("associativity fails", triple=(a, b, c))
    else:
        rng = np.random.default_rng(0)
        idx = rng.integers(0, n, size=(_ASSOC_SAMPLES, 3))
        a, b, c = idx[:, 0], idx[:, 1], idx[:, 2]
        lhs = arr[arr[a, b], c]
        rhs = arr[a, arr[b, c]]
        bad = np.nonzero(lhs != rhs)[0]
        if bad.size:
            i = int(bad[0])
            raise NotAGroup("associativity fails",
                            triple=(int(a[i]), int(b[i]), int(c[i])))


def from_table(table, name: str = "") -> FiniteGroup:
    """Validate an untrusted multiplication table and build the group.

    The identity is relocated to index 0 by relabeling if needed. Raises
    :class:`NotAGroup` naming the failure; associativity errors carry the
    first witnessing triple in lexicographic order.
    """
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    rows = [list(row) for row in table]
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotAGroup(f"row {i} has length {len(row)}, expected {n}")
        for v in row:
            if not 0 <= v < n:
                raise NotAGroup(f"entry {v} in row {i} out of range 0..{n - 1}")
    arr = np.array(rows, dtype=np.int64)
    ref = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(arr[i]), ref):
            raise NotAGroup(f"row {i} is not a permutation of 0..{n - 1}")
        if not np.array_equal(np.sort(arr[:, i]), ref):
            raise NotAGroup(f"column {i} is not a permutation of 0..{n - 1}")
    e = _find_identity(rows)
    if e is None:
        raise NotAGroup("no identity element")
    _check_associativity(arr)
    if e != 0:
        # swap labels 0 and e
        perm = list(range(n))
        perm[0], perm[e] = e, 0
        relabeled = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                relabeled[perm[a]][perm[b]] = perm[rows[a][b]]
        rows = relabeled
    return FiniteGroup(rows, name=name)


# -- builders ----------------------------------------------------------------


def cyclic(n: int, name: str = "") -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name=name or f"C{n}")


def trivial_group() -> FiniteGroup:
    return cyclic(1, name="C1")


def dihedral(n: int, name: str = "") -> FiniteGroup:
    """Dihedral group of order 2n: rotations r^i at 0..n-1, reflections at n+i."""
    if n < 1:
        raise ValueError("dihedral half-order must be positive")
    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            table[i][j] = (i + j) % n                    # r^i r^j
            table[i][n + j] = n + (j - i) % n            # r^i (s r^j) = s r^(j-i)
            table[n + i][j] = n + (i + j) % n            # (s r^i) r^j
            table[n + i][n + j] = (j - i) % n            # (s r^i)(s r^j) = r^(j-i)
    return FiniteGroup(table, name=name or f"D{size}")


def dicyclic(n: int, name: str = "") -> FiniteGroup:
    """Dicyclic group of order 4n: <a, b | a^(2n)=1, b^2=a^n, b a b^-1 = a^-1>.

    a^i at indices 0..2n-1, b a^i at 2n..4n-1. dicyclic(2) is Q8.
    """
    if n < 1:
        raise ValueError("dicyclic parameter must be positive")
    m = 2 * n
    size = 4 * n
    table = [[0] * size for _ in range(size)]
    for i in range(m):
        for j in range(m):
            table[i][j] = (i + j) % m
            table[i][m + j] = m + (j - i) % m
            table[m + i][j] = m + (i + j) % m
            table[m + i][m + j] = (n + j - i) % m
    return FiniteGroup(table, name=name or f"Q{size}")


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(p)))


def perm_group(degree: int, generators, name: str = "",
               cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close permutation generators under composition (breadth-first).

    Raises :class:`OrderCapExceeded` when the closure grows past ``cap``.
    """
    gens = []
    for g in generators:
        g = tuple(g)
        if sorted(g) != list(range(degree)):
            raise ValueError(f"generator {g} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    ident = tuple(range(degree))
    index = {ident: 0}
    elems = [ident]
    i = 0
    while i < len(elems):
        p = elems[i]
        i += 1
        for g in gens:
            q = _compose(p, g)
            if q not in index:
                if len(elems) >= cap:
                    raise OrderCapExceeded(
                        f"permutation closure exceeds cap {cap}")
                index[q] = len(elems)
                elems.append(q)
    n = len(elems)
    table = [[index[_compose(p, q)] for q in elems] for p in elems]
    return FiniteGroup(table, name=name)


def symmetric(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric degree must be positive")
    if n == 1:
        return cyclic(1, name="S1")
    gens = [(1, 0) + tuple(range(2, n)), tuple(range(1, n)) + (0,)]
    return perm_group(n, gens, name=f"S{n}", cap=cap)


def alternating(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 3:
        return cyclic(1, name=f"A{n}")
    gens = []
    for k in range(2, n):
        perm = list(range(n))
        perm[0], perm[1], perm[k] = 1, perm[k], 0
        gens.append(tuple(perm))
    return perm_group(n, gens, name=f"A{n}", cap=cap)


def elementary_abelian(p: int, rank: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if rank < 1:
        raise ValueError("rank must be positive")
    g = cyclic(p)
    out = g
    for _ in range(rank - 1):
        out = direct_product(out, g, cap=cap)
    label = f"E{p ** rank}" if rank > 1 else f"C{p}"
    return FiniteGroup(out.mul, name=label) if out.name != label else out


def heisenberg(p: int) -> FiniteGroup:
    """Unitriangular 3x3 group mod p: order p^3, exponent p for odd p."""
    n = p ** 3

    def enc(a, b, c):
        return (a * p + b) * p + c

    table = [[0] * n for _ in range(n)]
    for a in range(p):
        for b in range(p):
            for c in range(p):
                i = enc(a, b, c)
                for a2 in range(p):
                    for b2 in range(p):
                        base = enc((a + a2) % p, (b + b2) % p, 0)
                        cross = a * b2
                        for c2 in range(p):
                            table[i][enc(a2, b2, c2)] = base + (c + c2 + cross) % p
    return FiniteGroup(table, name=f"Heis{p}")


def sl2_3() -> FiniteGroup:
    """SL(2,3): 2x2 matrices of determinant 1 over the field with 3 elements."""
    mats = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    if (a * d - b * c) % 3 == 1:
                        mats.append((a, b, c, d))
    ident = (1, 0, 0, 1)
    mats.remove(ident)
    mats.insert(0, ident)
    index = {m: i for i, m in enumerate(mats)}

    def mat_mul(m, k):
        a, b, c, d = m
        e, f, g, h = k
        return ((a * e + b * g) % 3, (a * f + b * h) % 3,
                (c * e + d * g) % 3, (c * f + d * h) % 3)

    table = [[index[mat_mul(m, k)] for k in mats] for m in mats]
    return FiniteGroup(table, name="SL(2,3)")


def direct_product(a: FiniteGroup, b: FiniteGroup,
                   cap: int = DEFAULT_ORDER_CAP, name: str = "") -> FiniteGroup:
    """Componentwise product on index pairs (i, j) -> i * |b| + j."""
    n = a.order * b.order
    if n > cap:
        raise OrderCapExceeded(f"product order {n} exceeds cap {cap}")
    bn = b.order
    bmul = b.mul
    table = [[0] * n for _ in range(n)]
    for i1 in range(a.order):
        arow = a.mul[i1]
        for j1 in range(bn):
            row = table[i1 * bn + j1]
            brow = bmul[j1]
            for i2 in range(a.order):
                base = arow[i2] * bn
                off = i2 * bn
                for j2 in range(bn):
                    row[off + j2] = base + brow[j2]
    return FiniteGroup(table, name=name or f"{a.name}x{b.name}")


def semidirect_product(n_grp: FiniteGroup, h_grp: FiniteGroup, action,
                       cap: int = DEFAULT_ORDER_CAP, name: str = "") -> FiniteGroup:
    """Semidirect product N x| H for an action of H by automorphisms of N.

    ``action[h]`` is the permutation of N's indices giving the automorphism
    applied by h; the multiplication is
    (n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 h2). Raises
    :class:`NotAnAutomorphism` or :class:`NotAHomomorphism` with witnesses.
    """
    size = n_grp.order * h_grp.order
    if size > cap:
        raise OrderCapExceeded(f"product order {size} exceeds cap {cap}")
    nn = n_grp.order
    action = [tuple(a) for a in action]
    if len(action) != h_grp.order:
        raise ValueError(f"action has {len(action)} entries, expected {h_grp.order}")
    for h, phi in enumerate(action):
        if sorted(phi) != list(range(nn)):
            raise NotAnAutomorphism(h, (0, 0))
        nmul = n_grp.mul
        for x in range(nn):
            px = phi[x]
            row = nmul[x]
            for y in range(nn):
                if phi[row[y]] != nmul[px][phi[y]]:
                    raise NotAnAutomorphism(h, (x, y))
    hmul = h_grp.mul
    for h1 in range(h_grp.order):
        p1 = action[h1]
        for h2 in range(h_grp.order):
            p2 = action[h2]
            composed = action[hmul[h1][h2]]
            for x in range(nn):
                if composed[x] != p1[p2[x]]:
                    raise NotAHomomorphism((h1, h2))
    hn = h_grp.order
    nmul = n_grp.mul
    table = [[0] * size for _ in range(size)]
    for n1 in range(nn):
        row_n1 = nmul[n1]
        for h1 in range(hn):
            row = table[n1 * hn + h1]
            phi = action[h1]
            hrow = hmul[h1]
            for n2 in range(nn):
                base = row_n1[phi[n2]] * hn
                off = n2 * hn
                for h2 in range(hn):
                    row[off + h2] = base + hrow[h2]
    return FiniteGroup(table, name=name or f"{n_grp.name}:{h_grp.name}")


def action_from_generator_images(n_grp: FiniteGroup, h_grp: FiniteGroup,
                                 images: dict[int, list[int]]):
    """Extend automorphism images of generators of H to a full action table.

    ``images`` maps h-element indices to permutations of N's indices. The
    given elements must generate H; the extension is multiplicative and the
    result is validated by :func:`semidirect_product`.
    """
    nn = n_grp.order
    ident = tuple(range(nn))
    assigned: dict[int, tuple[int, ...]] = {0: ident}
    gens = {h: tuple(img) for h, img in images.items()}
    for h, img in gens.items():
        if not 0 <= h < h_grp.order:
            raise ValueError(f"h-element {h} out of range")
        if len(img) != nn:
            raise ValueError(f"image for h-element {h} has length {len(img)}, "
                             f"expected {nn}")
    frontier = [0]
    hmul = h_grp.mul
    while frontier:
        h1 = frontier.pop()
        p1 = assigned[h1]
        for g, pg in gens.items():
            h2 = hmul[h1][g]
            p2 = tuple(p1[pg[x]] for x in range(nn))
            if h2 in assigned:
                if assigned[h2] != p2:
                    raise NotAHomomorphism((h1, g), "inconsistent extension")
            else:
                assigned[h2] = p2
                frontier.append(h2)
    if len(assigned) != h_grp.order:
        raise NotAHomomorphism(
            (-1, -1), f"given elements generate only {len(assigned)} of "
                      f"{h_grp.order} h-elements")
    return [assigned[h] for h in range(h_grp.order)]
