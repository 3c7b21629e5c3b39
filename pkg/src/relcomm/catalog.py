"""Built-in group catalog and the stored-table data directory.

The data directory (override with RELCOMM_DATA_DIR) ships one table
file per group of order <= 32: first line the order n, then n lines of
n space-separated element indices. Files are verified against a sha256
manifest on ingestion, and the per-order counts are cross-checked
against the classical census of groups of each order.

The catalog itself is a deterministic list of (name, GroupSpec) pairs:
cyclic, dihedral and dicyclic families up to the requested order,
symmetric and alternating instances, Heisenberg groups, SL(2,3), the
fixed-point-free semidirect constructions F20, F56, F75 and the
generalized dihedral group over C3 x C3, a list of coprime direct
products, and every stored table.
"""

from __future__ import annotations

import hashlib
import os
import re
from functools import lru_cache
from pathlib import Path

from .errors import SpecSchemaError
from .gspec import (
    Alternating,
    Cyclic,
    Dicyclic,
    Dihedral,
    ElementaryAbelian,
    GroupSpec,
    Heisenberg,
    Named,
    Product,
    Semidirect,
    SL23,
    Symmetric,
    Table,
)

KNOWN_GROUP_COUNTS = (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5,
                      1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4, 1, 51)
STORED_MAX_ORDER = 32

# fixed-point-free actions for the Frobenius constructions
_F56_ACTION = (0, 6, 1, 7, 2, 4, 3, 5)            # order-7 map on (C2)^3
_GDIH9_ACTION = (0, 2, 1, 6, 8, 7, 3, 5, 4)       # inversion on (C3)^2
_F75_ACTION = (0, 24, 18, 12, 6, 1, 20, 19, 13, 7, 2, 21, 15, 14, 8, 3, 22,
               16, 10, 9, 4, 23, 17, 11, 5)       # order-3 map on (C5)^2


def _heis5_order3_action() -> tuple[int, ...]:
    """Order-3 automorphism of Heis5 inducing an irreducible fixed-point-free
    map on the central quotient: (a,b,c) -> (-b, a-b, c + 4ab + 3b^2)."""
    def enc(a, b, c):
        return (a * 5 + b) * 5 + c

    perm = [0] * 125
    for a in range(5):
        for b in range(5):
            for c in range(5):
                perm[enc(a, b, c)] = enc((-b) % 5, (a - b) % 5,
                                         (c + 4 * a * b + 3 * b * b) % 5)
    return tuple(perm)


SPECIAL_SPECS: dict[str, GroupSpec] = {
    "SL(2,3)": SL23(),
    "F20": Semidirect(Cyclic(5), Cyclic(4), ((1, (0, 2, 4, 1, 3)),)),
    "F56": Semidirect(ElementaryAbelian(2, 3), Cyclic(7), ((1, _F56_ACTION),)),
    "F75": Semidirect(ElementaryAbelian(5, 2), Cyclic(3), ((1, _F75_ACTION),)),
    "GDih9": Semidirect(ElementaryAbelian(3, 2), Cyclic(2), ((1, _GDIH9_ACTION),)),
    "Heis5:C3": Semidirect(Heisenberg(5), Cyclic(3),
                           ((1, _heis5_order3_action()),)),
}

COPRIME_PRODUCTS: tuple[tuple[str, str, str], ...] = (
    ("D8xC3", "D8", "C3"),
    ("Q8xC3", "Q8", "C3"),
    ("S3xC5", "S3", "C5"),
    ("D8xC5", "D8", "C5"),
    ("Heis3xC2", "Heis3", "C2"),
    ("A4xC5", "A4", "C5"),
    ("F20xC3", "F20", "C3"),
    ("D10xC9", "D10", "C9"),
    ("Heis3xC4", "Heis3", "C4"),
    ("SL23xC5", "SL(2,3)", "C5"),
    ("D8xHeis3", "D8", "Heis3"),
)


def data_dir() -> Path:
    override = os.environ.get("RELCOMM_DATA_DIR")
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


@lru_cache(maxsize=4)
def _stored_tables(root: str) -> dict[str, tuple[tuple[int, ...], ...]]:
    """Load, checksum-verify, and census-check every stored table."""
    base = Path(root)
    manifest_path = base / "checksums.sha256"
    if not manifest_path.exists():
        raise FileNotFoundError(f"missing table manifest {manifest_path}")
    expected: dict[str, str] = {}
    for line in manifest_path.read_text().splitlines():
        digest, filename = line.split()
        expected[filename] = digest
    tables: dict[str, tuple[tuple[int, ...], ...]] = {}
    per_order: dict[int, int] = {}
    for filename in sorted(expected):
        path = base / "tables" / filename
        payload = path.read_bytes()
        digest = hashlib.sha256(payload).hexdigest()
        if digest != expected[filename]:
            raise ValueError(f"checksum mismatch for {filename}")
        lines = payload.decode().splitlines()
        n = int(lines[0])
        rows = tuple(tuple(int(v) for v in line.split())
                     for line in lines[1:n + 1])
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"corrupt table file {filename}")
        tables[filename[:-4]] = rows
        per_order[n] = per_order.get(n, 0) + 1
    for order, count in enumerate(KNOWN_GROUP_COUNTS, start=1):
        if per_order.get(order, 0) != count:
            raise ValueError(
                f"stored tables: {per_order.get(order, 0)} groups of order "
                f"{order}, the census says {count}")
    return tables


def stored_tables() -> dict[str, tuple[tuple[int, ...], ...]]:
    return _stored_tables(str(data_dir()))


_STORED_RE = re.compile(r"G(\d+)_(\d+)$")
_CYCLIC_RE = re.compile(r"C(\d+)$")
_DIHEDRAL_RE = re.compile(r"D(\d+)$")
_DICYCLIC_RE = re.compile(r"Q(\d+)$")
_SYM_RE = re.compile(r"S(\d+)$")
_ALT_RE = re.compile(r"A(\d+)$")
_HEIS_RE = re.compile(r"Heis(\d+)$")


def resolve_named(name: str) -> GroupSpec:
    """Map a catalog name to its spec.

    Families: C<n>, D<order> (even, >= 6), Q<order> (multiple of 4, >= 8),
    S<2..6>, A<3..6>, Heis<p>, stored tables G<order>_<k>, the specials
    (SL(2,3), F20, F56, F75, GDih9, ES32+, ES32-), and X"x"Y products of
    resolvable halves.
    """
    if name in SPECIAL_SPECS:
        return SPECIAL_SPECS[name]
    if name in ("ES32+", "ES32-"):
        return _extraspecial_named(name)
    m = _STORED_RE.match(name)
    if m:
        tables = stored_tables()
        if name not in tables:
            raise SpecSchemaError("named", f"no stored table {name}")
        return Table(tables[name])
    m = _CYCLIC_RE.match(name)
    if m:
        return Cyclic(int(m.group(1)))
    m = _DIHEDRAL_RE.match(name)
    if m:
        order = int(m.group(1))
        if order % 2 or order < 2:
            raise SpecSchemaError("named", f"bad dihedral order in {name}")
        return Dihedral(order // 2)
    m = _DICYCLIC_RE.match(name)
    if m:
        order = int(m.group(1))
        if order % 4 or order < 4:
            raise SpecSchemaError("named", f"bad dicyclic order in {name}")
        return Dicyclic(order // 4)
    m = _SYM_RE.match(name)
    if m and 1 <= int(m.group(1)) <= 6:
        return Symmetric(int(m.group(1)))
    m = _ALT_RE.match(name)
    if m and 3 <= int(m.group(1)) <= 6:
        return Alternating(int(m.group(1)))
    m = _HEIS_RE.match(name)
    if m:
        return Heisenberg(int(m.group(1)))
    if "x" in name:
        for i in range(1, len(name)):
            if name[i] != "x":
                continue
            try:
                left = resolve_named(name[:i])
                right = resolve_named(name[i + 1:])
            except SpecSchemaError:
                continue
            return Product(left, right)
    raise SpecSchemaError("named", f"unknown catalog name {name!r}")


def _extraspecial_named(name: str) -> GroupSpec:
    """The two extraspecial groups of order 32, told apart by involutions.

    Extraspecial means |Z| = 2 with an elementary abelian central
    quotient; the plus type has more involutions (19) than the minus
    type (11).
    """
    from .groups import FiniteGroup

    found = []
    for table_name, rows in sorted(stored_tables().items()):
        if len(rows) != 32:
            continue
        g = FiniteGroup(rows)
        if g.center().order != 2:
            continue
        quotient = g.central_quotient().target
        if quotient.exponent() != 2:
            continue
        involutions = sum(1 for o in g.element_orders if o == 2)
        found.append((involutions, table_name))
    if len(found) != 2:
        raise AssertionError(f"expected 2 extraspecial groups, found {found}")
    found.sort(reverse=True)
    chosen = found[0][1] if name == "ES32+" else found[1][1]
    return Table(stored_tables()[chosen])


def builtin_catalog(max_order: int) -> list[tuple[str, GroupSpec]]:
    """Deterministic (name, spec) list of every catalog group up to max_order."""
    entries: dict[str, tuple[int, GroupSpec]] = {}

    def add(name: str, order: int, spec: GroupSpec):
        if order <= max_order and name not in entries:
            entries[name] = (order, spec)

    for n in range(1, max_order + 1):
        add(f"C{n}", n, Cyclic(n))
    for n in range(3, max_order // 2 + 1):
        add(f"D{2 * n}", 2 * n, Dihedral(n))
    for n in range(2, max_order // 4 + 1):
        add(f"Q{4 * n}", 4 * n, Dicyclic(n))
    add("S3", 6, Symmetric(3))
    add("S4", 24, Symmetric(4))
    add("A4", 12, Alternating(4))
    add("A5", 60, Alternating(5))
    add("Heis3", 27, Heisenberg(3))
    add("Heis5", 125, Heisenberg(5))
    add("SL(2,3)", 24, SPECIAL_SPECS["SL(2,3)"])
    add("F20", 20, SPECIAL_SPECS["F20"])
    add("F56", 56, SPECIAL_SPECS["F56"])
    add("F75", 75, SPECIAL_SPECS["F75"])
    add("GDih9", 18, SPECIAL_SPECS["GDih9"])
    add("Heis5:C3", 375, SPECIAL_SPECS["Heis5:C3"])
    product_orders = {"D8xC3": 24, "Q8xC3": 24, "S3xC5": 30, "D8xC5": 40,
                      "Heis3xC2": 54, "A4xC5": 60, "F20xC3": 60,
                      "D10xC9": 90, "Heis3xC4": 108, "SL23xC5": 120,
                      "D8xHeis3": 216}
    for prod_name, left, right in COPRIME_PRODUCTS:
        add(prod_name, product_orders[prod_name],
            Product(resolve_named(left), resolve_named(right)))
    for table_name, rows in stored_tables().items():
        add(table_name, len(rows), Named(table_name))
    ordered = sorted(entries.items(), key=lambda kv: (kv[1][0], kv[0]))
    return [(name, spec) for name, (order, spec) in ordered]
