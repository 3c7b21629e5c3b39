"""JSON group specifications: parse, validate, build, serialize.

A spec is a single-key JSON object naming a constructor:

    {"cyclic": 12}                  {"dihedral": 9}      (order 2*9 = 18)
    {"dicyclic": 3}   (order 12)    {"symmetric": 4}     {"alternating": 5}
    {"elementary_abelian": {"p": 2, "rank": 3}}
    {"heisenberg": 3}               {"sl23": true}
    {"perm": {"degree": 4, "generators": [[[0,1,2]], [[0,1],[2,3]]]}}
    {"table": [[0,1],[1,0]]}
    {"product": [SPEC, SPEC]}
    {"semidirect": {"n": SPEC, "h": SPEC, "action": {"h_gen": [0,2,4,1,3]}}}
    {"named": "SL(2,3)"}

Permutation generators are cycle lists. A semidirect action gives the
automorphism images of generators of H only: either ``h_gen`` (the image
of h-element 1, for cyclic H) or ``gens`` mapping h-element indices to
permutations of N's indices; the build extends multiplicatively.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import groups as _g
from .errors import SpecParseError, SpecSchemaError


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    n: int  # half order; the group has order 2n


@dataclass(frozen=True)
class Dicyclic:
    n: int  # quarter order; the group has order 4n


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Alternating:
    n: int


@dataclass(frozen=True)
class ElementaryAbelian:
    p: int
    rank: int


@dataclass(frozen=True)
class Heisenberg:
    p: int


@dataclass(frozen=True)
class SL23:
    pass


@dataclass(frozen=True)
class Perm:
    degree: int
    generators: tuple[tuple[tuple[int, ...], ...], ...]  # cycles per generator


@dataclass(frozen=True)
class Table:
    rows: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Product:
    left: "GroupSpec"
    right: "GroupSpec"


@dataclass(frozen=True)
class Semidirect:
    n: "GroupSpec"
    h: "GroupSpec"
    action: tuple[tuple[int, tuple[int, ...]], ...]  # (h element, image perm)


@dataclass(frozen=True)
class Named:
    name: str


GroupSpec = (Cyclic | Dihedral | Dicyclic | Symmetric | Alternating
             | ElementaryAbelian | Heisenberg | SL23 | Perm | Table
             | Product | Semidirect | Named)


def _positive_int(value, field) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise SpecSchemaError(field, f"expected a positive integer, got {value!r}")
    return value


def _from_json(obj, path: str) -> GroupSpec:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SpecSchemaError(path or "<root>",
                              "a group spec is a single-key object")
    key, val = next(iter(obj.items()))
    where = f"{path}.{key}" if path else key
    if key == "cyclic":
        return Cyclic(_positive_int(val, where))
    if key == "dihedral":
        return Dihedral(_positive_int(val, where))
    if key == "dicyclic":
        return Dicyclic(_positive_int(val, where))
    if key == "symmetric":
        n = _positive_int(val, where)
        if n > 6:
            raise SpecSchemaError(where, "symmetric degree is capped at 6")
        return Symmetric(n)
    if key == "alternating":
        n = _positive_int(val, where)
        if n > 6:
            raise SpecSchemaError(where, "alternating degree is capped at 6")
        return Alternating(n)
    if key == "elementary_abelian":
        if not isinstance(val, dict) or set(val) != {"p", "rank"}:
            raise SpecSchemaError(where, 'expected {"p": prime, "rank": k}')
        return ElementaryAbelian(_positive_int(val["p"], where + ".p"),
                                 _positive_int(val["rank"], where + ".rank"))
    if key == "heisenberg":
        return Heisenberg(_positive_int(val, where))
    if key == "sl23":
        if val not in (True, {}):
            raise SpecSchemaError(where, "use true as the value")
        return SL23()
    if key == "perm":
        if not isinstance(val, dict) or set(val) != {"degree", "generators"}:
            raise SpecSchemaError(where, 'expected {"degree": d, "generators": [...]}')
        degree = _positive_int(val["degree"], where + ".degree")
        gens = val["generators"]
        if not isinstance(gens, list) or not gens:
            raise SpecSchemaError(where + ".generators",
                                  "expected a nonempty list of cycle lists")
        parsed = []
        for gi, cycles in enumerate(gens):
            field = f"{where}.generators[{gi}]"
            if not isinstance(cycles, list):
                raise SpecSchemaError(field, "expected a list of cycles")
            cyc = []
            for cycle in cycles:
                if (not isinstance(cycle, list) or len(cycle) < 2
                        or not all(isinstance(x, int) and 0 <= x < degree
                                   for x in cycle)):
                    raise SpecSchemaError(field, f"bad cycle {cycle!r}")
                cyc.append(tuple(cycle))
            parsed.append(tuple(cyc))
        return Perm(degree, tuple(parsed))
    if key == "table":
        if not isinstance(val, list) or not val:
            raise SpecSchemaError(where, "expected a nonempty matrix")
        n = len(val)
        rows = []
        for i, row in enumerate(val):
            if (not isinstance(row, list) or len(row) != n
                    or not all(isinstance(x, int) and 0 <= x < n for x in row)):
                raise SpecSchemaError(f"{where}[{i}]",
                                      f"expected a row of {n} indices")
            rows.append(tuple(row))
        return Table(tuple(rows))
    if key == "product":
        if not isinstance(val, list) or len(val) != 2:
            raise SpecSchemaError(where, "expected a two-element list of specs")
        return Product(_from_json(val[0], where + "[0]"),
                       _from_json(val[1], where + "[1]"))
    if key == "semidirect":
        if not isinstance(val, dict) or set(val) != {"n", "h", "action"}:
            raise SpecSchemaError(where, 'expected {"n": .., "h": .., "action": ..}')
        action_obj = val["action"]
        if not isinstance(action_obj, dict):
            raise SpecSchemaError(where + ".action", "expected an object")
        images: list[tuple[int, tuple[int, ...]]] = []
        if set(action_obj) == {"h_gen"}:
            img = action_obj["h_gen"]
            if not isinstance(img, list) or not all(isinstance(x, int) for x in img):
                raise SpecSchemaError(where + ".action.h_gen",
                                      "expected a permutation list")
            images.append((1, tuple(img)))
        elif set(action_obj) == {"gens"}:
            gens = action_obj["gens"]
            if not isinstance(gens, dict) or not gens:
                raise SpecSchemaError(where + ".action.gens",
                                      "expected {h-index: permutation, ...}")
            for k, img in sorted(gens.items()):
                if not k.isdigit():
                    raise SpecSchemaError(where + f".action.gens.{k}",
                                          "keys are h-element indices")
                if not isinstance(img, list) or not all(isinstance(x, int)
                                                        for x in img):
                    raise SpecSchemaError(where + f".action.gens.{k}",
                                          "expected a permutation list")
                images.append((int(k), tuple(img)))
        else:
            raise SpecSchemaError(where + ".action",
                                  'expected {"h_gen": [...]} or {"gens": {...}}')
        return Semidirect(_from_json(val["n"], where + ".n"),
                          _from_json(val["h"], where + ".h"),
                          tuple(images))
    if key == "named":
        if not isinstance(val, str) or not val:
            raise SpecSchemaError(where, "expected a catalog name")
        return Named(val)
    raise SpecSchemaError(where, "unknown constructor")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse a JSON group spec; bounds validated, construction deferred."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, exc.pos) from exc
    return _from_json(obj, "")


def serialize(spec: GroupSpec) -> str:
    """Canonical JSON for a spec; parse(serialize(s)) == s."""
    return json.dumps(_to_json(spec), separators=(",", ":"), sort_keys=True)


def _to_json(spec: GroupSpec):
    if isinstance(spec, Cyclic):
        return {"cyclic": spec.n}
    if isinstance(spec, Dihedral):
        return {"dihedral": spec.n}
    if isinstance(spec, Dicyclic):
        return {"dicyclic": spec.n}
    if isinstance(spec, Symmetric):
        return {"symmetric": spec.n}
    if isinstance(spec, Alternating):
        return {"alternating": spec.n}
    if isinstance(spec, ElementaryAbelian):
        return {"elementary_abelian": {"p": spec.p, "rank": spec.rank}}
    if isinstance(spec, Heisenberg):
        return {"heisenberg": spec.p}
    if isinstance(spec, SL23):
        return {"sl23": True}
    if isinstance(spec, Perm):
        return {"perm": {"degree": spec.degree,
                         "generators": [[list(c) for c in gen]
                                        for gen in spec.generators]}}
    if isinstance(spec, Table):
        return {"table": [list(r) for r in spec.rows]}
    if isinstance(spec, Product):
        return {"product": [_to_json(spec.left), _to_json(spec.right)]}
    if isinstance(spec, Semidirect):
        if len(spec.action) == 1 and spec.action[0][0] == 1:
            action = {"h_gen": list(spec.action[0][1])}
        else:
            action = {"gens": {str(k): list(v) for k, v in spec.action}}
        return {"semidirect": {"n": _to_json(spec.n), "h": _to_json(spec.h),
                               "action": action}}
    if isinstance(spec, Named):
        return {"named": spec.name}
    raise TypeError(f"not a GroupSpec: {spec!r}")


def _cycles_to_perm(degree: int, cycles) -> tuple[int, ...]:
    perm = list(range(degree))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + (cycle[0],)):
            perm[a] = b
    return tuple(perm)


def build(spec: GroupSpec, cap: int = _g.DEFAULT_ORDER_CAP,
          name: str = "") -> _g.FiniteGroup:
    """Construct the group a spec describes.

    ``Named`` specs resolve through the builtin catalog (imported lazily
    to avoid a cycle).
    """
    if isinstance(spec, Cyclic):
        return _g.cyclic(spec.n)
    if isinstance(spec, Dihedral):
        return _g.dihedral(spec.n)
    if isinstance(spec, Dicyclic):
        return _g.dicyclic(spec.n)
    if isinstance(spec, Symmetric):
        return _g.symmetric(spec.n, cap=cap)
    if isinstance(spec, Alternating):
        return _g.alternating(spec.n, cap=cap)
    if isinstance(spec, ElementaryAbelian):
        return _g.elementary_abelian(spec.p, spec.rank, cap=cap)
    if isinstance(spec, Heisenberg):
        return _g.heisenberg(spec.p)
    if isinstance(spec, SL23):
        return _g.sl2_3()
    if isinstance(spec, Perm):
        gens = [_cycles_to_perm(spec.degree, g) for g in spec.generators]
        return _g.perm_group(spec.degree, gens, name=name, cap=cap)
    if isinstance(spec, Table):
        return _g.from_table([list(r) for r in spec.rows], name=name)
    if isinstance(spec, Product):
        return _g.direct_product(build(spec.left, cap=cap),
                                 build(spec.right, cap=cap), cap=cap, name=name)
    if isinstance(spec, Semidirect):
        n_grp = build(spec.n, cap=cap)
        h_grp = build(spec.h, cap=cap)
        action = _g.action_from_generator_images(
            n_grp, h_grp, {k: list(v) for k, v in spec.action})
        return _g.semidirect_product(n_grp, h_grp, action, cap=cap, name=name)
    if isinstance(spec, Named):
        from .catalog import resolve_named
        return build(resolve_named(spec.name), cap=cap, name=name or spec.name)
    raise TypeError(f"not a GroupSpec: {spec!r}")
