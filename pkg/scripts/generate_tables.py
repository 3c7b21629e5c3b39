#!/usr/bin/env python3
"""Generate the stored multiplication tables for every group of order <= 32.

Construction sources, processed order by order (ascending, so smaller
stored groups can seed larger constructions):

  * abelian groups: direct products of cyclic prime-power factors, one
    per multiset of invariant factors;
  * dihedral and dicyclic families;
  * the two nonabelian groups of order 27 (exponent 3 and exponent 9);
  * semidirect products N x| H over every homomorphism H -> Aut(N), for
    every ordered factorization of each non-prime-power order (this
    subsumes all direct products via the trivial action);
  * central extensions by C2 of every group of order 8 and 16, one per
    2-cocycle class (complete for 2-groups: every group of order 2^(k+1)
    is a central extension of a group of order 2^k by C2).

Candidates are deduplicated up to isomorphism: cheap invariant
fingerprints bucket them, a subgroup-profile fingerprint refines the
buckets, and a backtracking generator-mapping search settles the rest.
The per-order counts are asserted against the classical census
(1, 1, 1, 2, 1, 2, 1, 5, ... , 51 at order 32) before anything is
written, so an incomplete sweep or a broken isomorphism test aborts.

Output: src/relcomm/data/tables/G<order>_<k>.tbl (first line the order,
then the table rows) plus a sha256 manifest. Deterministic given the
construction list; re-running after changing the sweep may renumber.
"""

from __future__ import annotations

import hashlib
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from relcomm import groups as G
from relcomm.groups import FiniteGroup
from relcomm.lattice import all_subgroups
from relcomm.numutil import factorize

KNOWN_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1,
    12: 5, 13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5,
    21: 2, 22: 2, 23: 1, 24: 15, 25: 2, 26: 2, 27: 5, 28: 4, 29: 1,
    30: 4, 31: 1, 32: 51,
}

MAX_ORDER = 32


# -- invariants ----------------------------------------------------------


def derived_subgroup_mask(g: FiniteGroup) -> int:
    mul, inv = g.mul, g.inv
    n = g.order
    comms = set()
    for x in range(n):
        for y in range(n):
            comms.add(mul[mul[x][y]][mul[inv[x]][inv[y]]])
    return g.generated_mask(comms)


def cheap_fingerprint(g: FiniteGroup) -> tuple:
    n = g.order
    orders = g.element_orders
    cs = g.class_sizes()
    hist = tuple(sorted((o, orders.count(o)) for o in set(orders)))
    cs_hist = tuple(sorted((s, cs.count(s)) for s in set(cs)))
    mul = g.mul
    per_elem = tuple(sorted(
        (orders[x], cs[x], orders[mul[x][x]], cs[mul[x][x]])
        for x in range(n)))
    dmask = derived_subgroup_mask(g)
    dorder = dmask.bit_count()
    ab = g._quotient_by_mask(dmask).target
    ab_hist = tuple(sorted(ab.element_orders))
    return (n, hist, cs_hist, g.center().order, dorder, g.exponent(),
            ab_hist, per_elem)


def lattice_fingerprint(g: FiniteGroup) -> tuple:
    lat = all_subgroups(g, cap=max(768, g.order))
    by_order: dict[int, int] = {}
    normal = 0
    for s in lat.subgroups:
        by_order[s.order] = by_order.get(s.order, 0) + 1
        if lat.is_normal(s):
            normal += 1
    return (tuple(sorted(by_order.items())), normal)


# -- isomorphism test ------------------------------------------------------


def minimal_generators(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    mask = 1
    while mask.bit_count() < g.order:
        x = next(i for i in range(g.order) if not mask >> i & 1)
        gens.append(x)
        mask = g.generated_mask(gens)
    return gens


def _element_invariants(g: FiniteGroup) -> list[tuple]:
    orders = g.element_orders
    cs = g.class_sizes()
    mul = g.mul
    return [(orders[x], cs[x], orders[mul[x][x]]) for x in range(g.order)]


def _expressions(g: FiniteGroup, gens: list[int]):
    """BFS expressions: each element as parent * generator, discovery order."""
    n = g.order
    parent = [-1] * n
    via = [-1] * n
    topo = [0]
    seen = [False] * n
    seen[0] = True
    mul = g.mul
    i = 0
    while i < len(topo):
        e = topo[i]
        i += 1
        for gi, x in enumerate(gens):
            y = mul[e][x]
            if not seen[y]:
                seen[y] = True
                parent[y] = e
                via[y] = gi
                topo.append(y)
    return parent, via, topo


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    """Backtracking isomorphism search; both groups share a fingerprint."""
    if g.order != h.order:
        return False
    if g.is_abelian() != h.is_abelian():
        return False
    if g.is_abelian():
        # abelian groups are determined by their element order histogram
        return sorted(g.element_orders) == sorted(h.element_orders)
    gens = minimal_generators(g)
    inv_g = _element_invariants(g)
    inv_h = _element_invariants(h)
    candidates = [
        [y for y in range(h.order) if inv_h[y] == inv_g[x]] for x in gens]
    parent, via, topo = _expressions(g, gens)
    gmul, hmul = g.mul, h.mul
    n = g.order

    def try_extend(images):
        phi = [-1] * n
        phi[0] = 0
        for e in topo[1:]:
            phi[e] = hmul[phi[parent[e]]][images[via[e]]]
        if len(set(phi)) != n:
            return False
        for a in range(n):
            pa = phi[a]
            ra = gmul[a]
            for b in range(n):
                if phi[ra[b]] != hmul[pa][phi[b]]:
                    return False
        return True

    k = len(gens)
    chosen: list[int] = []

    def backtrack(pos):
        if pos == k:
            return try_extend(chosen)
        for y in candidates[pos]:
            ok = True
            for i in range(pos):
                a = gmul[gens[i]][gens[pos]]
                b = hmul[chosen[i]][y]
                if inv_g[a] != inv_h[b]:
                    ok = False
                    break
            if not ok:
                continue
            chosen.append(y)
            if backtrack(pos + 1):
                return True
            chosen.pop()
        return False

    return backtrack(0)


# -- automorphisms and homomorphism sweeps ---------------------------------


def automorphisms(g: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms of a small group as permutation tuples."""
    gens = minimal_generators(g)
    inv = _element_invariants(g)
    candidates = [[y for y in range(g.order) if inv[y] == inv[x]] for x in gens]
    parent, via, topo = _expressions(g, gens)
    mul = g.mul
    n = g.order
    out = []

    def assemble(images):
        phi = [-1] * n
        phi[0] = 0
        for e in topo[1:]:
            phi[e] = mul[phi[parent[e]]][images[via[e]]]
        if len(set(phi)) != n:
            return None
        for a in range(n):
            pa = phi[a]
            ra = mul[a]
            for b in range(n):
                if phi[ra[b]] != mul[pa][phi[b]]:
                    return None
        return tuple(phi)

    def backtrack(pos, chosen):
        if pos == len(gens):
            phi = assemble(chosen)
            if phi is not None:
                out.append(phi)
            return
        for y in candidates[pos]:
            backtrack(pos + 1, chosen + [y])

    backtrack(0, [])
    return out


def homomorphisms(h: FiniteGroup, target_elems: list[tuple[int, ...]],
                  target_index: dict[tuple[int, ...], int],
                  target_mul) -> list[list[int]]:
    """All homomorphisms from h into the (automorphism) group given by
    ``target_elems``; each result maps h-element -> target element index."""
    gens = minimal_generators(h)
    parent, via, topo = _expressions(h, gens)
    hmul = h.mul
    n = h.order
    horders = h.element_orders

    def target_order(idx):
        k = 1
        cur = idx
        while cur != 0:
            cur = target_mul[cur][idx]
            k += 1
        return k

    torders = [target_order(i) for i in range(len(target_elems))]
    candidates = [[i for i in range(len(target_elems))
                   if horders[x] % torders[i] == 0] for x in gens]
    out = []

    def assemble(images):
        phi = [-1] * n
        phi[0] = 0
        for e in topo[1:]:
            phi[e] = target_mul[phi[parent[e]]][images[via[e]]]
        for a in range(n):
            pa = phi[a]
            ra = hmul[a]
            for b in range(n):
                if phi[ra[b]] != target_mul[pa][phi[b]]:
                    return None
        return phi

    def backtrack(pos, chosen):
        if pos == len(gens):
            phi = assemble(chosen)
            if phi is not None:
                out.append(phi)
            return
        for y in candidates[pos]:
            backtrack(pos + 1, chosen + [y])

    backtrack(0, [])
    return out


def semidirect_sweep(order: int, stored: dict[int, list[FiniteGroup]]):
    """All N x| H with |N| * |H| = order over every action homomorphism."""
    out = []
    for n_order in sorted(d for d in range(2, order) if order % d == 0):
        h_order = order // n_order
        if h_order < 2:
            continue
        for n_grp in stored[n_order]:
            auts = automorphisms(n_grp)
            index = {a: i for i, a in enumerate(auts)}
            amul = [[index[tuple(a[b[x]] for x in range(n_grp.order))]
                     for b in auts] for a in auts]
            for h_grp in stored[h_order]:
                for phi in homomorphisms(h_grp, auts, index, amul):
                    action = [auts[phi[x]] for x in range(h_grp.order)]
                    out.append(G.semidirect_product(
                        n_grp, h_grp, action, cap=order))
    return out


# -- central extensions by C2 ----------------------------------------------


def central_c2_extensions(q: FiniteGroup) -> list[FiniteGroup]:
    """One central extension of q by C2 per 2-cocycle class."""
    n = q.order
    nv = (n - 1) * (n - 1)

    def var(a, b):
        return (a - 1) * (n - 1) + (b - 1)

    mul = q.mul
    rows = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                # f(a,b) + f(ab,c) + f(b,c) + f(a,bc) = 0
                mask = 0
                ab, bc = mul[a][b], mul[b][c]
                for (u, v) in ((a, b), (ab, c), (b, c), (a, bc)):
                    if u != 0 and v != 0:
                        mask ^= 1 << var(u, v)
                if mask:
                    rows.append(mask)
    z_basis = _nullspace(rows, nv)
    b_basis = []
    for u in range(1, n):
        mask = 0
        for a in range(1, n):
            for b in range(1, n):
                bits = (a == u) + (b == u) + (mul[a][b] == u)
                if bits & 1:
                    mask ^= 1 << var(a, b)
        b_basis.append(mask)
    h_basis = _quotient_basis(z_basis, b_basis)
    out = []
    for sel in range(1 << len(h_basis)):
        f = 0
        for i, v in enumerate(h_basis):
            if sel >> i & 1:
                f ^= v
        size = 2 * n
        table = [[0] * size for _ in range(size)]
        for a in range(n):
            mrow = mul[a]
            for e1 in (0, 1):
                row = table[a * 2 + e1]
                for b in range(n):
                    bit = 0
                    if a != 0 and b != 0:
                        bit = f >> var(a, b) & 1
                    base = mrow[b] * 2
                    row[b * 2] = base + (e1 ^ bit)
                    row[b * 2 + 1] = base + (e1 ^ 1 ^ bit)
        out.append(FiniteGroup(table))
    return out


def _nullspace(rows, nvars):
    """Basis of the solution space of the GF(2) system given as bitmasks."""
    echelon: dict[int, int] = {}  # pivot (highest bit) -> row
    for row in rows:
        cur = row
        while cur:
            p = cur.bit_length() - 1
            if p in echelon:
                cur ^= echelon[p]
            else:
                echelon[p] = cur
                break
    free = [c for c in range(nvars) if c not in echelon]
    basis = []
    for f in free:
        x = 1 << f
        # rows in increasing pivot order only involve already-solved bits
        for p in sorted(echelon):
            r = echelon[p] ^ (1 << p)
            if (r & x).bit_count() & 1:
                x |= 1 << p
        basis.append(x)
    for x in basis:
        if any((row & x).bit_count() & 1 for row in rows):
            raise AssertionError("nullspace back-substitution failed")
    return basis


def _quotient_basis(space_basis, sub_basis):
    """Vectors of ``space_basis`` independent modulo span(sub_basis)."""
    echelon: dict[int, int] = {}

    def insert(v):
        while v:
            p = v.bit_length() - 1
            if p in echelon:
                v ^= echelon[p]
            else:
                echelon[p] = v
                return v
        return 0

    for v in sub_basis:
        insert(v)
    return [v for v in space_basis if insert(v)]


# -- abelian constructions ---------------------------------------------------


def _partitions_into_prime_powers(p, e):
    if e == 0:
        yield []
        return
    for first in range(e, 0, -1):
        for rest in _partitions_into_prime_powers(p, e - first):
            if not rest or rest[0] <= first:
                yield [first] + rest


def abelian_groups(order: int) -> list[FiniteGroup]:
    fact = factorize(order)
    per_prime = []
    for p, e in sorted(fact.items()):
        per_prime.append([[p ** k for k in part]
                          for part in _partitions_into_prime_powers(p, e)])
    combos = [[]]
    for options in per_prime:
        combos = [c + opt for c in combos for opt in options]
    out = []
    for factors in combos:
        g = G.cyclic(factors[0])
        for f in factors[1:]:
            g = G.direct_product(g, G.cyclic(f), cap=order)
        out.append(g)
    return out


# -- main ---------------------------------------------------------------------


def constructions_for(order: int, stored) -> list[FiniteGroup]:
    out = abelian_groups(order)
    if order % 2 == 0 and order >= 6:
        out.append(G.dihedral(order // 2))
    if order % 4 == 0 and order >= 8:
        out.append(G.dicyclic(order // 4))
    if order == 24:
        out.append(G.sl2_3())
    if order == 27:
        out.append(G.heisenberg(3))
        # exponent-9 nonabelian group: C9 x| C3, generator acting as x -> x^4
        act = [(4 * x) % 9 for x in range(9)]
        out.append(G.semidirect_product(
            G.cyclic(9), G.cyclic(3),
            G.action_from_generator_images(G.cyclic(9), G.cyclic(3), {1: act}),
            cap=order))
    if len(factorize(order)) > 1:
        out.extend(semidirect_sweep(order, stored))
    if order in (16, 32):
        for q in stored[order // 2]:
            out.extend(central_c2_extensions(q))
    return out


def dedup(candidates: list[FiniteGroup]) -> list[FiniteGroup]:
    buckets: dict[tuple, list[FiniteGroup]] = {}
    for g in candidates:
        buckets.setdefault(cheap_fingerprint(g), []).append(g)
    kept: list[tuple[tuple, FiniteGroup]] = []
    for fp, group_list in sorted(buckets.items()):
        if len(group_list) > 1:
            refined: dict[tuple, list[FiniteGroup]] = {}
            for g in group_list:
                refined.setdefault(lattice_fingerprint(g), []).append(g)
            for sub_fp, gs in sorted(refined.items()):
                reps: list[FiniteGroup] = []
                for g in gs:
                    if not any(are_isomorphic(g, r) for r in reps):
                        reps.append(g)
                kept.extend(((fp, sub_fp), r) for r in reps)
        else:
            kept.append(((fp, ()), group_list[0]))
    kept.sort(key=lambda pair: (pair[0], pair[1].mul))
    return [g for _, g in kept]


def main():
    data_dir = Path(__file__).resolve().parent.parent / "src" / "relcomm" / "data"
    tables_dir = data_dir / "tables"
    tables_dir.mkdir(parents=True, exist_ok=True)
    stored: dict[int, list[FiniteGroup]] = {}
    for order in range(1, MAX_ORDER + 1):
        t0 = time.time()
        candidates = constructions_for(order, stored) if order > 1 \
            else [G.cyclic(1)]
        groups = dedup(candidates)
        stored[order] = groups
        expected = KNOWN_COUNTS[order]
        status = "ok" if len(groups) == expected else "MISMATCH"
        print(f"order {order:2d}: {len(candidates):5d} candidates -> "
              f"{len(groups):3d} groups (expected {expected}) {status} "
              f"[{time.time() - t0:.1f}s]")
        if len(groups) != expected:
            raise SystemExit(f"census mismatch at order {order}: "
                             f"{len(groups)} != {expected}")
    manifest = []
    for order in range(1, MAX_ORDER + 1):
        for i, g in enumerate(stored[order], start=1):
            G.from_table(g.mul)  # last-line validation of every shipped table
            name = f"G{order}_{i}"
            path = tables_dir / f"{name}.tbl"
            lines = [str(order)]
            lines.extend(" ".join(str(v) for v in row) for row in g.mul)
            payload = ("\n".join(lines) + "\n").encode()
            path.write_bytes(payload)
            digest = hashlib.sha256(payload).hexdigest()
            manifest.append(f"{digest}  {name}.tbl")
    (data_dir / "checksums.sha256").write_text("\n".join(manifest) + "\n")
    total = sum(len(v) for v in stored.values())
    print(f"wrote {total} tables to {tables_dir}")


if __name__ == "__main__":
    main()
