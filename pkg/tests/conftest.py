"""Shared fixtures: catalog groups and lattices, built once per session."""

from __future__ import annotations

import pytest

from relcomm.catalog import builtin_catalog
from relcomm.gspec import build
from relcomm.lattice import cached_all_subgroups


def build_catalog(max_order):
    """(name, group) pairs for the builtin catalog up to max_order."""
    out = []
    for name, spec in builtin_catalog(max_order):
        out.append((name, build(spec, cap=max(1024, max_order), name=name)))
    return out


@pytest.fixture(scope="session")
def catalog48():
    return build_catalog(48)


@pytest.fixture(scope="session")
def catalog64():
    return build_catalog(64)


@pytest.fixture(scope="session")
def lattices48(catalog48):
    return {name: cached_all_subgroups(g) for name, g in catalog48}


def degrees_by_subgroup(g, lat):
    """dict mask -> d(H,G) over the whole lattice."""
    from relcomm.degrees import all_relative_degrees
    return {s.mask: d for s, d in
            zip(lat.subgroups, all_relative_degrees(g, lat))}


def nested_pairs(lat):
    """(i, j) lattice index pairs with subgroup i properly below subgroup j."""
    subs = lat.subgroups
    for i, a in enumerate(subs):
        for j, b in enumerate(subs):
            if a.mask != b.mask and a.mask & b.mask == a.mask:
                yield i, j


def abelian_flags(g, lat):
    mul = g.mul
    flags = []
    for i in range(len(lat)):
        elems = lat.elements_of(i)
        flags.append(all(mul[x][y] == mul[y][x]
                         for x in elems for y in elems))
    return flags
