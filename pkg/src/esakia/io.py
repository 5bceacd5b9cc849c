"""JSON structure files: strict loaders and a canonical printer.

Every loader rejects unknown fields and reports semantic problems with a
path into the document (``tails[1].below[0]``).  Malformed JSON is reported
with its line and column.  :func:`dumps` is canonical, so printing a parsed
file reproduces it byte for byte when it was written by :func:`dumps`.

Points of a fan space are written as a skeleton index ``i`` or a tail
point ``[t, n]``.
"""

from __future__ import annotations

import json
from typing import Any

from . import algebra as al
from .algebra import AlgHom, FinLattice, MeetSemilatticeView
from .brouwerian import GenRelation, PointedGenSpace
from .errors import StructureError
from .fan import DefinableSet, FanSpace, Tail, Trace
from .morphisms import Const, Embed, FanMap
from .poset import FinPoset, PosetMap, bits, to_mask


class InputError(StructureError):
    """Unreadable or invalid input file; the CLI maps it to exit status 2."""


# canonical printing ----------------------------------------------------------

def dumps(doc: dict) -> str:
    """One top-level key per line, sorted; nested values compact."""
    if not doc:
        return "{}\n"
    rows = [f" {json.dumps(k)}: {json.dumps(doc[k], sort_keys=True, separators=(', ', ': '))}" for k in sorted(doc)]
    return "{\n" + ",\n".join(rows) + "\n}\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(e.msg, f"line {e.lineno} column {e.colno}") from None


def read(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(e.strerror or str(e), path) from None
    try:
        return loads(text)
    except InputError as e:
        raise InputError(str(e), path) from None


# field helpers -----------------------------------------------------------------

def _obj(data, path: str, required: tuple, optional: tuple = (), kind: str | None = None) -> dict:
    if not isinstance(data, dict):
        raise InputError("expected an object", path or "$")
    allowed = set(required) | set(optional) | ({"kind"} if kind else set())
    extra = sorted(set(data) - allowed)
    if extra:
        raise InputError(f"unknown field {extra[0]!r}", _join(path, extra[0]))
    for k in required:
        if k not in data:
            raise InputError(f"missing field {k!r}", path or "$")
    if kind is not None and data.get("kind", kind) != kind:
        raise InputError(f"expected kind {kind!r}, got {data['kind']!r}", _join(path, "kind"))
    return data


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _nat(x, path: str, below: int | None = None) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise InputError("expected a natural number", path)
    if below is not None and x >= below:
        raise InputError(f"index {x} out of range (size {below})", path)
    return x


def _list(x, path: str) -> list:
    if not isinstance(x, list):
        raise InputError("expected a list", path)
    return x


def _indices(x, path: str, below: int | None = None) -> list[int]:
    return [_nat(v, _join(path, k), below) for k, v in enumerate(_list(x, path))]


def _pair(x, path: str, below: int | None = None, below2: int | None = None) -> tuple[int, int]:
    if not isinstance(x, list) or len(x) != 2:
        raise InputError("expected a pair [i, j]", path)
    return _nat(x[0], _join(path, 0), below), _nat(x[1], _join(path, 1), below if below2 is None else below2)


def _names(x, path: str, size: int) -> tuple[str, ...]:
    x = _list(x, path)
    if len(x) != size or not all(isinstance(v, str) for v in x):
        raise InputError(f"expected {size} strings", path)
    return tuple(x)


def _wrap(fn, path: str):
    """Re-raise structure errors from constructors with the document path prepended."""
    try:
        return fn()
    except InputError:
        raise
    except StructureError as e:
        inner = getattr(e, "path", "")
        msg = str(e)
        if inner and msg.startswith(inner + ": "):
            msg = msg[len(inner) + 2:]
        raise InputError(msg, _join(path, inner) if inner else (path or "$")) from None


# posets and lattices ---------------------------------------------------------------

def poset_to_json(P: FinPoset) -> dict:
    doc = {"kind": "poset", "size": P.size, "leq": [list(c) for c in sorted(P.covers())]}
    if P.names is not None:
        doc["names"] = list(P.names)
    return doc


def poset_from_json(data, path: str = "") -> FinPoset:
    d = _obj(data, path, ("size", "leq"), ("names",), kind="poset")
    n = _nat(d["size"], _join(path, "size"))
    pairs = [_pair(v, _join(_join(path, "leq"), k), n) for k, v in enumerate(_list(d["leq"], _join(path, "leq")))]
    names = _names(d["names"], _join(path, "names"), n) if "names" in d else None
    return _wrap(lambda: FinPoset.from_pairs(n, pairs, names), _join(path, "leq"))


def posetmap_to_json(f: PosetMap) -> dict:
    return {"kind": "posetmap", "dom": poset_to_json(f.dom), "cod": poset_to_json(f.cod), "map": list(f.assignment)}


def posetmap_from_json(data, path: str = "") -> PosetMap:
    d = _obj(data, path, ("dom", "cod", "map"), kind="posetmap")
    P = poset_from_json(d["dom"], _join(path, "dom"))
    Q = poset_from_json(d["cod"], _join(path, "cod"))
    m = _indices(d["map"], _join(path, "map"), Q.size)
    if len(m) != P.size:
        raise InputError(f"expected {P.size} images", _join(path, "map"))
    return PosetMap(P, Q, tuple(m))


def lattice_to_json(A: FinLattice) -> dict:
    return {"kind": "lattice", "poset": poset_to_json(A.order)}


def lattice_from_json(data, path: str = "") -> FinLattice:
    d = _obj(data, path, ("poset",), kind="lattice")
    P = poset_from_json(d["poset"], _join(path, "poset"))
    return _wrap(lambda: al.lattice_from_poset(P), _join(path, "poset"))


def semilattice_from_json(data, path: str = "") -> MeetSemilatticeView:
    """A finite meet-semilattice with top; accepts ``lattice`` or ``semilattice`` files."""
    if isinstance(data, dict) and data.get("kind") == "semilattice":
        data = dict(data, kind="lattice")
    return MeetSemilatticeView(lattice_from_json(data, path))


def hom_to_json(h: AlgHom) -> dict:
    return {"kind": "hom", "dom": lattice_to_json(h.dom), "cod": lattice_to_json(h.cod), "map": list(h.assignment)}


def hom_from_json(data, path: str = "") -> AlgHom:
    d = _obj(data, path, ("dom", "cod", "map"), kind="hom")
    A = lattice_from_json(d["dom"], _join(path, "dom"))
    B = lattice_from_json(d["cod"], _join(path, "cod"))
    m = _indices(d["map"], _join(path, "map"), B.size)
    if len(m) != A.size:
        raise InputError(f"expected {A.size} images", _join(path, "map"))
    return AlgHom(A, B, tuple(m))


# fan spaces -------------------------------------------------------------------------

def fanspace_to_json(X: FanSpace) -> dict:
    tails = []
    for t in X.tails:
        row = {"limit": t.limit, "below": sorted(bits(t.below)), "excluded": sorted(t.excluded)}
        if t.name is not None:
            row["name"] = t.name
        tails.append(row)
    return {"kind": "fanspace", "skeleton": poset_to_json(X.skeleton), "tags": sorted(bits(X.limits)), "tails": tails}


def fanspace_from_json(data, path: str = "") -> FanSpace:
    d = _obj(data, path, ("skeleton", "tags", "tails"), kind="fanspace")
    P = poset_from_json(d["skeleton"], _join(path, "skeleton"))
    tags = _indices(d["tags"], _join(path, "tags"), P.size)
    tails = []
    tpath = _join(path, "tails")
    for k, row in enumerate(_list(d["tails"], tpath)):
        p = _join(tpath, k)
        r = _obj(row, p, ("limit", "below", "excluded"), ("name",))
        limit = _nat(r["limit"], _join(p, "limit"), P.size)
        below = _indices(r["below"], _join(p, "below"), P.size)
        excluded = _indices(r["excluded"], _join(p, "excluded"))
        name = r.get("name")
        if name is not None and not isinstance(name, str):
            raise InputError("expected a string", _join(p, "name"))
        tails.append(Tail(limit, to_mask(below), frozenset(excluded), name=name))
    return _wrap(lambda: FanSpace(P, to_mask(tags), tuple(tails)), path)


def definable_to_json(D: DefinableSet) -> dict:
    return D.as_json()


def definable_from_json(data, X: FanSpace, path: str = "") -> DefinableSet:
    d = _obj(data, path, ("named", "tails"))
    named = _indices(d["named"], _join(path, "named"), X.n_skeleton)
    tpath = _join(path, "tails")
    rows = _list(d["tails"], tpath)
    if len(rows) != len(X.tails):
        raise InputError(f"expected {len(X.tails)} traces", tpath)
    traces = []
    for k, row in enumerate(rows):
        p = _join(tpath, k)
        r = _obj(row, p, ("mode", "exceptions"))
        if r["mode"] not in ("FIN", "COFIN"):
            raise InputError("mode must be FIN or COFIN", _join(p, "mode"))
        traces.append(Trace(r["mode"] == "COFIN", frozenset(_indices(r["exceptions"], _join(p, "exceptions")))))
    return DefinableSet(X, to_mask(named), tuple(traces))


def _point_to_json(q):
    return list(q) if isinstance(q, tuple) else q


def _point_from_json(x, path: str):
    if isinstance(x, list):
        return _pair(x, path)
    return _nat(x, path)


def _rule_to_json(rule) -> dict:
    if isinstance(rule, Const):
        return {"const": _point_to_json(rule.point)}
    return {"embed": rule.tail, "a": rule.a, "b": rule.b}


def _rule_from_json(x, path: str):
    if isinstance(x, dict) and "const" in x:
        r = _obj(x, path, ("const",))
        return Const(_point_from_json(r["const"], _join(path, "const")))
    r = _obj(x, path, ("embed",), ("a", "b"))
    return Embed(_nat(r["embed"], _join(path, "embed")), _nat(r.get("a", 1), _join(path, "a")), _nat(r.get("b", 0), _join(path, "b")))


def fanmap_to_json(f: FanMap) -> dict:
    return {
        "kind": "fanmap",
        "dom": fanspace_to_json(f.dom),
        "cod": fanspace_to_json(f.cod),
        "named": [_point_to_json(q) for q in f.named],
        "tails": [_rule_to_json(r) for r in f.tails],
        "overrides": [[list(k), _point_to_json(q)] for k, q in f.overrides],
    }


def fanmap_from_json(data, path: str = "") -> FanMap:
    d = _obj(data, path, ("dom", "cod", "named", "tails"), ("overrides",), kind="fanmap")
    X = fanspace_from_json(d["dom"], _join(path, "dom"))
    Y = fanspace_from_json(d["cod"], _join(path, "cod"))
    npath, tpath, opath = _join(path, "named"), _join(path, "tails"), _join(path, "overrides")
    named = tuple(_point_from_json(v, _join(npath, k)) for k, v in enumerate(_list(d["named"], npath)))
    rules = tuple(_rule_from_json(v, _join(tpath, k)) for k, v in enumerate(_list(d["tails"], tpath)))
    over = []
    for k, v in enumerate(_list(d.get("overrides", []), opath)):
        p = _join(opath, k)
        if not isinstance(v, list) or len(v) != 2:
            raise InputError("expected [[t, n], point]", p)
        over.append((_pair(v[0], _join(p, 0)), _point_from_json(v[1], _join(p, 1))))
    return _wrap(lambda: FanMap(X, Y, named, rules, tuple(over)), path)


# pointed generalized spaces and relations -----------------------------------------------

def pgspace_to_json(X: PointedGenSpace) -> dict:
    doc = {"kind": "pgspace", "poset": poset_to_json(X.poset), "x0": sorted(bits(X.x0)), "m": X.m}
    if X.opens != frozenset(range(1 << X.size)):
        doc["opens"] = sorted(sorted(bits(U)) for U in X.opens)
    return doc


def pgspace_from_json(data, path: str = "") -> PointedGenSpace:
    d = _obj(data, path, ("poset", "x0", "m"), ("opens",), kind="pgspace")
    P = poset_from_json(d["poset"], _join(path, "poset"))
    x0 = to_mask(_indices(d["x0"], _join(path, "x0"), P.size))
    m = _nat(d["m"], _join(path, "m"), P.size)
    opens = None
    if "opens" in d:
        op = _join(path, "opens")
        opens = frozenset(to_mask(_indices(v, _join(op, k), P.size)) for k, v in enumerate(_list(d["opens"], op)))
    return _wrap(lambda: PointedGenSpace(P, x0, m, opens), path)


def relation_to_json(R: GenRelation) -> dict:
    return {"kind": "relation", "dom": pgspace_to_json(R.dom), "cod": pgspace_to_json(R.cod), "pairs": sorted(map(list, R.pairs))}


def relation_from_json(data, path: str = "", dom: PointedGenSpace | None = None, cod: PointedGenSpace | None = None) -> GenRelation:
    """Relation between two pointed spaces, embedded in the file or passed in."""
    d = _obj(data, path, ("pairs",), ("dom", "cod"), kind="relation")
    if "dom" in d:
        dom = pgspace_from_json(d["dom"], _join(path, "dom"))
    if "cod" in d:
        cod = pgspace_from_json(d["cod"], _join(path, "cod"))
    if dom is None or cod is None:
        raise InputError("relation needs its domain and codomain spaces", path or "$")
    pp = _join(path, "pairs")
    pairs = [_pair(v, _join(pp, k), dom.size, cod.size) for k, v in enumerate(_list(d["pairs"], pp))]
    return GenRelation(dom, cod, frozenset(pairs))


# dispatch ----------------------------------------------------------------------------------

LOADERS = {
    "poset": poset_from_json,
    "posetmap": posetmap_from_json,
    "lattice": lattice_from_json,
    "semilattice": semilattice_from_json,
    "hom": hom_from_json,
    "fanspace": fanspace_from_json,
    "fanmap": fanmap_from_json,
    "pgspace": pgspace_from_json,
    "relation": relation_from_json,
}


def to_json(obj) -> dict:
    if isinstance(obj, FinPoset):
        return poset_to_json(obj)
    if isinstance(obj, PosetMap):
        return posetmap_to_json(obj)
    if isinstance(obj, FinLattice):
        return lattice_to_json(obj)
    if isinstance(obj, MeetSemilatticeView):
        return {"kind": "semilattice", "poset": poset_to_json(obj.base.order)}
    if isinstance(obj, AlgHom):
        return hom_to_json(obj)
    if isinstance(obj, FanSpace):
        return fanspace_to_json(obj)
    if isinstance(obj, FanMap):
        return fanmap_to_json(obj)
    if isinstance(obj, PointedGenSpace):
        return pgspace_to_json(obj)
    if isinstance(obj, GenRelation):
        return relation_to_json(obj)
    if isinstance(obj, DefinableSet):
        return definable_to_json(obj)
    raise TypeError(f"no file form for {type(obj).__name__}")


def parse(data, kind: str | None = None):
    """Build the structure a loaded document describes; ``kind`` restricts what is accepted."""
    if not isinstance(data, dict):
        raise InputError("expected an object", "$")
    k = data.get("kind")
    if k is None:
        raise InputError("missing field 'kind'", "$")
    if kind is not None and k != kind and not (kind == "semilattice" and k == "lattice"):
        raise InputError(f"expected kind {kind!r}, got {k!r}", "kind")
    if k not in LOADERS:
        raise InputError(f"unknown kind {k!r}", "kind")
    return LOADERS[kind or k](data)


def load(path: str, kind: str | None = None):
    try:
        return parse(read(path), kind)
    except InputError as e:
        if e.path.startswith(path):
            raise
        raise InputError(str(e), path) from None


def dump(obj) -> str:
    return dumps(to_json(obj))
