"""Maps between fan spaces and their morphism classes.

A :class:`FanMap` sends each skeleton point anywhere, each tail either to a
constant point or affinely (``n -> a*n + b``) into a tail, with a finite
table of per-index overrides.  Five classes are decided:

``es_minus``
    continuous and order preserving.
``es``
    additionally ``f^-1(down y) = down f^-1(y)`` for every point ``y``.
``es_plus``
    ``f^-1(down cl E) = down cl f^-1(E)`` for constructible ``E`` (finite
    unions of differences of open upsets).
``es_star``
    the same identity for every downset ``E``.
``es_dagger``
    both of the previous two.

Classification first rewrites the map into *normal form*.  Every tail
point the map mentions is moved into the skeleton (an order-homeomorphism:
tail points are isolated and only sit below ``below``), and tails are split
into residue classes so every affine piece has slope one.  After that each
tail point is mapped uniformly, so the set quantifiers can be decided on
generators of the shape basis with fresh indices beyond every mentioned
index.  Both sides of the ``es_plus`` and ``es_star`` identities commute
with finite unions, so it suffices to test them on a generating family:
differences ``J - M`` with ``J`` a least basis open upset containing a
representative point and ``M`` a largest one avoiding a representative
point, and least basis downsets of representative points.  An infinite
trace is indistinguishable from a cofinite one for ``cl`` and for slope-one
preimages, which is why finite/cofinite traces suffice.  Witnesses refer to
the normalized spaces, whose point names keep the original tail indices.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Union

from . import fan
from .errors import InvariantViolation, SpaceMismatch, StructureError
from .fan import (
    COFIN_EMPTY,
    FIN_EMPTY,
    DefinableSet,
    FanSpace,
    Point,
    Tail,
    Trace,
    box,
    complement,
    difference,
    down_closure,
    interior,
    is_open,
    is_upset_def,
    open_upset_implication,
    spectral_closure,
)
from .poset import FinPoset, bits
from .report import Report


@dataclass(frozen=True)
class Const:
    point: Point


@dataclass(frozen=True)
class Embed:
    tail: int
    a: int = 1
    b: int = 0


TailRule = Union[Const, Embed]


@dataclass(frozen=True)
class FanMap:
    dom: FanSpace
    cod: FanSpace
    named: tuple
    tails: tuple = ()
    overrides: tuple = ()

    def __post_init__(self):
        ov = self.overrides
        if isinstance(ov, dict):
            ov = ov.items()
        ov = tuple(sorted((tuple(k), _as_point(v)) for k, v in ov))
        object.__setattr__(self, "overrides", ov)
        object.__setattr__(self, "named", tuple(_as_point(q) for q in self.named))
        object.__setattr__(self, "tails", tuple(self.tails))
        self._validate()

    def _validate(self):
        dom, cod = self.dom, self.cod
        if len(self.named) != dom.n_skeleton:
            raise StructureError("one image per skeleton point is required", "named")
        for i, q in enumerate(self.named):
            if not cod.is_point(q):
                raise StructureError(f"{q!r} is not a point of the codomain", f"named[{i}]")
        if len(self.tails) != len(dom.tails):
            raise StructureError("one rule per domain tail is required", "tails")
        keys = [k for k, _ in self.overrides]
        if len(set(keys)) != len(keys):
            raise StructureError("an index is overridden twice", "overrides")
        for k, q in self.overrides:
            if not (isinstance(k, tuple) and dom.is_point(k)):
                raise StructureError(f"{k!r} is not a tail point of the domain", "overrides")
            if not cod.is_point(q):
                raise StructureError(f"{q!r} is not a point of the codomain", "overrides")
        over = dict(self.overrides)
        for t, rule in enumerate(self.tails):
            path = f"tails[{t}]"
            if isinstance(rule, Const):
                if not cod.is_point(rule.point):
                    raise StructureError(f"{rule.point!r} is not a point of the codomain", path)
            elif isinstance(rule, Embed):
                if not 0 <= rule.tail < len(cod.tails):
                    raise StructureError(f"no codomain tail {rule.tail}", path)
                if rule.a < 1 or rule.b < 0:
                    raise StructureError("affine maps need a >= 1 and b >= 0", path)
                for e in cod.tails[rule.tail].excluded:
                    n, r = divmod(e - rule.b, rule.a)
                    if r == 0 and n >= 0 and n not in dom.tails[t].excluded and (t, n) not in over:
                        raise StructureError(f"index {n} lands on excluded index {e}", path)
            else:
                raise StructureError("rule must be Const or Embed", path)

    @cached_property
    def _over(self) -> dict:
        return dict(self.overrides)

    def __call__(self, p: Point) -> Point:
        if isinstance(p, tuple):
            if p in self._over:
                return self._over[p]
            rule = self.tails[p[0]]
            if isinstance(rule, Const):
                return rule.point
            return (rule.tail, rule.a * p[1] + rule.b)
        return self.named[p]

    @property
    def is_normal(self) -> bool:
        return (
            not self.overrides
            and all(isinstance(q, int) for q in self.named)
            and all(
                isinstance(r.point, int) if isinstance(r, Const) else r.a == 1 for r in self.tails
            )
        )


def _as_point(q):
    return tuple(q) if isinstance(q, (list, tuple)) else q


def identity_map(X: FanSpace) -> FanMap:
    return FanMap(X, X, tuple(range(X.n_skeleton)), tuple(Embed(t) for t in range(len(X.tails))))


# preimages and images --------------------------------------------------------

def preimage(f: FanMap, D: DefinableSet) -> DefinableSet:
    if D.space is not f.cod and D.space != f.cod:
        raise SpaceMismatch("set does not live in the codomain")
    named = 0
    for i, q in enumerate(f.named):
        if q in D:
            named |= 1 << i
    traces = []
    for rule in f.tails:
        if isinstance(rule, Const):
            traces.append(COFIN_EMPTY if rule.point in D else FIN_EMPTY)
        else:
            src = D.tails[rule.tail]
            ex = set()
            for e in src.exceptions:
                n, r = divmod(e - rule.b, rule.a)
                if r == 0 and n >= 0:
                    ex.add(n)
            traces.append(Trace(src.cofinite, frozenset(ex)))
    for (t, n), q in f.overrides:
        tr = traces[t]
        if ((n in tr.exceptions) != tr.cofinite) != (q in D):
            traces[t] = Trace(tr.cofinite, tr.exceptions ^ {n})
    return DefinableSet(f.dom, named, tuple(traces))


def image(f: FanMap, D: DefinableSet) -> DefinableSet:
    """Direct image; affine pieces must have slope one (true in normal form)."""
    cod = f.cod
    named = 0
    traces = [FIN_EMPTY] * len(cod.tails)

    def add(q):
        nonlocal named
        if isinstance(q, tuple):
            traces[q[0]] = fan._union_trace(traces[q[0]], Trace(False, frozenset({q[1]})))
        else:
            named |= 1 << q

    for i in bits(D.named):
        add(f.named[i])
    keys: dict[int, set] = defaultdict(set)
    for (t, n), q in f.overrides:
        keys[t].add(n)
        if (t, n) in D:
            add(q)
    for t, rule in enumerate(f.tails):
        tr = D.tails[t]
        if isinstance(rule, Const):
            if tr.cofinite or tr.exceptions - keys[t]:
                add(rule.point)
            continue
        if rule.a != 1:
            raise StructureError("image of a non-unit affine piece is not definable; normalize first")
        if tr.cofinite:
            gone = set(tr.exceptions) | keys[t] | set(f.dom.tails[t].excluded)
            ex = set(range(rule.b)) | {n + rule.b for n in gone}
            piece = Trace(True, frozenset(ex))
        else:
            piece = Trace(False, frozenset(n + rule.b for n in tr.exceptions - keys[t]))
        traces[rule.tail] = fan._union_trace(traces[rule.tail], piece)
    return DefinableSet(cod, named, tuple(traces))


# normal form ------------------------------------------------------------------

@dataclass(frozen=True)
class Reindex:
    """An order-homeomorphism ``src -> dst`` moving some tail points into the skeleton
    and splitting tails into residue classes."""

    src: FanSpace
    dst: FanSpace
    mods: tuple[int, ...]
    first: tuple[int, ...]
    moved: tuple[tuple[int, int], ...]

    @cached_property
    def _slot(self) -> dict:
        base = self.src.n_skeleton
        return {p: base + k for k, p in enumerate(self.moved)}

    def point(self, p: Point) -> Point:
        if not isinstance(p, tuple):
            return p
        if p in self._slot:
            return self._slot[p]
        t, n = p
        m = self.mods[t]
        return (self.first[t] + n % m, n // m)

    def set(self, D: DefinableSet) -> DefinableSet:
        named = D.named
        for p, k in self._slot.items():
            if p in D:
                named |= 1 << k
        traces = []
        for t, tr in enumerate(D.tails):
            m = self.mods[t]
            for r in range(m):
                traces.append(Trace(tr.cofinite, frozenset((n - r) // m for n in tr.exceptions if n % m == r)))
        return DefinableSet(self.dst, named, tuple(traces))


def reindex(X: FanSpace, mods: dict, moved: dict) -> Reindex:
    P = X.skeleton
    pts = tuple(sorted((t, n) for t, ns in moved.items() for n in ns))
    base = P.size
    up = list(P.up) + [(1 << (base + k)) | X.tails[t].below for k, (t, n) in enumerate(pts)]
    names = tuple(P.name(i) for i in range(base)) + tuple(X.name(p) for p in pts)
    skel = FinPoset(base + len(pts), tuple(up), names)
    tails, first, mod_list = [], [], []
    for t, tail in enumerate(X.tails):
        m = mods.get(t, 1)
        first.append(len(tails))
        mod_list.append(m)
        gone = tail.excluded | frozenset(moved.get(t, ()))
        label = tail.name or f"t{t}"
        for r in range(m):
            ex = frozenset((n - r) // m for n in gone if n % m == r)
            tails.append(Tail(tail.limit, tail.below, ex, name=label if m == 1 else f"{label}:{r}mod{m}"))
    dst = FanSpace(skel, X.limits, tuple(tails))
    return Reindex(X, dst, tuple(mod_list), tuple(first), pts)


@dataclass(frozen=True)
class NormalForm:
    original: FanMap
    map: FanMap
    dom: Reindex
    cod: Reindex


@lru_cache(maxsize=2048)
def normalize(f: FanMap) -> NormalForm:
    dom, cod = f.dom, f.cod
    cod_mod: dict[int, int] = {}
    for rule in f.tails:
        if isinstance(rule, Embed):
            cod_mod[rule.tail] = math.lcm(cod_mod.get(rule.tail, 1), rule.a)
    dom_mod = {t: cod_mod[r.tail] // r.a for t, r in enumerate(f.tails) if isinstance(r, Embed)}

    cod_moved: dict[int, set] = defaultdict(set)
    targets = list(f.named) + [r.point for r in f.tails if isinstance(r, Const)] + [q for _, q in f.overrides]
    for q in targets:
        if isinstance(q, tuple):
            cod_moved[q[0]].add(q[1])
    over = f._over
    dom_moved: dict[int, set] = defaultdict(set)
    for t, n in over:
        dom_moved[t].add(n)
    for t, rule in enumerate(f.tails):
        if isinstance(rule, Embed):
            for k in cod_moved.get(rule.tail, ()):
                n, r = divmod(k - rule.b, rule.a)
                if r == 0 and n >= 0 and n not in dom.tails[t].excluded and (t, n) not in over:
                    dom_moved[t].add(n)

    dre = reindex(dom, dom_mod, dom_moved)
    cre = reindex(cod, cod_mod, cod_moved)
    named = [cre.point(f(i)) for i in range(dom.n_skeleton)]
    named += [cre.point(f(p)) for p in dre.moved]
    assert all(isinstance(q, int) for q in named)
    rules: list[TailRule] = []
    for t, rule in enumerate(f.tails):
        for j in range(dre.mods[t]):
            if isinstance(rule, Const):
                rules.append(Const(cre.point(rule.point)))
            else:
                m = cre.mods[rule.tail]
                c = rule.a * j + rule.b
                rules.append(Embed(cre.first[rule.tail] + c % m, 1, c // m))
    g = FanMap(dre.dst, cre.dst, tuple(named), tuple(rules))
    return NormalForm(f, g, dre, cre)


# witnesses and verdicts -------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    condition: str
    subject: Any
    lhs: Any = None
    rhs: Any = None
    note: str = ""

    def as_json(self) -> dict:
        def show(x):
            if isinstance(x, DefinableSet):
                return x.describe()
            if isinstance(x, tuple) and x and isinstance(x[0], DefinableSet):
                return [show(v) for v in x]
            return x

        out = {"condition": self.condition, "subject": show(self.subject)}
        if self.lhs is not None:
            out["lhs"] = show(self.lhs)
            out["rhs"] = show(self.rhs)
        if self.note:
            out["note"] = self.note
        return out


FLAGS = ("es_minus", "es", "es_plus", "es_star", "es_dagger")


@dataclass(frozen=True)
class Verdict:
    es_minus: bool
    es: bool
    es_plus: bool
    es_star: bool
    es_dagger: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in FLAGS}

    def violations(self) -> list[str]:
        bad = []
        if self.es_plus and not self.es:
            bad.append("es_plus without es")
        if self.es and not self.es_minus:
            bad.append("es without es_minus")
        if self.es_star and not self.es_minus:
            bad.append("es_star without es_minus")
        if self.es_dagger != (self.es_plus and self.es_star):
            bad.append("es_dagger differs from es_plus and es_star")
        return bad

    def as_json(self) -> dict:
        return {"flags": self.flags(), "witnesses": {k: w.as_json() for k, w in sorted(self.witnesses.items())}}


def es_minus_failure(f: FanMap) -> Witness | None:
    dom, cod = f.dom, f.cod
    for t, rule in enumerate(f.tails):
        lim = dom.tails[t].limit
        at = f.named[lim]
        want = rule.point if isinstance(rule, Const) else cod.tails[rule.tail].limit
        if at != want:
            return Witness("continuity", dom.name(lim), cod.name(at), cod.name(want), f"tail {t} converges elsewhere")
    for i in range(dom.n_skeleton):
        for j in bits(dom.skeleton.up[i]):
            if not cod.leq(f.named[i], f.named[j]):
                return Witness("order", [dom.name(i), dom.name(j)])
    far = max([dom.bound, cod.bound] + [n for (_, n), _ in f.overrides]) + 1
    for t, tail in enumerate(dom.tails):
        pts = [(t, far)] + [k for k, _ in f.overrides if k[0] == t]
        for p in pts:
            for s in bits(tail.below):
                if not cod.leq(f(p), f.named[s]):
                    return Witness("order", [dom.name(p), dom.name(s)])
    return None


def fresh_for(g: FanMap, depth: int = 1) -> tuple[int, ...]:
    shift = max([0] + [r.b for r in g.tails if isinstance(r, Embed)])
    start = max(g.dom.bound, g.cod.bound) + shift + 1
    return fan.fresh_indices(start, depth)


def representatives(X: FanSpace, fresh: tuple[int, ...]) -> list[Point]:
    """Skeleton points, each fresh index per tail, and one index standing for all others."""
    other = fresh[-1] + 1
    pts: list[Point] = list(range(X.n_skeleton))
    for t in range(len(X.tails)):
        pts.extend((t, n) for n in fresh + (other,))
    return pts


def _seed_trace(fresh: tuple[int, ...], n: int) -> Trace:
    """Smallest basis trace containing index ``n``."""
    return Trace(False, frozenset({n})) if n in fresh else Trace(True, frozenset(fresh))


@lru_cache(maxsize=4096)
def least_open_upsets(X: FanSpace, fresh: tuple[int, ...]) -> tuple[DefinableSet, ...]:
    out = []
    for p in representatives(X, fresh):
        named = 0
        traces = [FIN_EMPTY] * len(X.tails)
        if isinstance(p, tuple):
            traces[p[0]] = _seed_trace(fresh, p[1])
        else:
            named = 1 << p
        while True:
            grown = named
            for tr, t in zip(traces, X.tails):
                if tr.nonempty:
                    grown |= t.below
            grown = X.skeleton.up_mask(grown)
            changed = grown != named
            named = grown
            for k, t in enumerate(X.tails):
                if named >> t.limit & 1 and not traces[k].cofinite:
                    traces[k] = Trace(True, frozenset(fresh) - traces[k].exceptions)
                    changed = True
            if not changed:
                break
        out.append(DefinableSet(X, named, tuple(traces)))
    return tuple(out)


def largest_open_upset_in(D: DefinableSet) -> DefinableSet:
    while True:
        nxt = box(interior(D))
        if nxt == D:
            return D
        D = nxt


@lru_cache(maxsize=4096)
def largest_open_upsets_avoiding(X: FanSpace, fresh: tuple[int, ...]) -> tuple[DefinableSet, ...]:
    out = []
    whole = X.whole()
    for p in representatives(X, fresh):
        if isinstance(p, tuple):
            t, n = p
            tr = Trace(True, frozenset({n})) if n in fresh else Trace(False, frozenset(fresh))
            tails = list(whole.tails)
            tails[t] = tr
            start = DefinableSet(X, whole.named, tuple(tails))
        else:
            start = DefinableSet(X, whole.named & ~(1 << p), whole.tails)
        out.append(largest_open_upset_in(start))
    return tuple(out)


@lru_cache(maxsize=4096)
def constructible_generators(X: FanSpace, fresh: tuple[int, ...]) -> tuple[DefinableSet, ...]:
    """Differences ``J - M`` whose finite unions give every basis ``U - V``."""
    seen = {}
    for J in least_open_upsets(X, fresh):
        for M in largest_open_upsets_avoiding(X, fresh):
            E = difference(J, M)
            if E.named or any(tr.nonempty for tr in E.tails):
                seen.setdefault(E, None)
    return tuple(seen)


@lru_cache(maxsize=4096)
def downset_generators(X: FanSpace, fresh: tuple[int, ...]) -> tuple[DefinableSet, ...]:
    out = []
    for p in representatives(X, fresh):
        if isinstance(p, tuple):
            tails = [FIN_EMPTY] * len(X.tails)
            tails[p[0]] = _seed_trace(fresh, p[1])
            out.append(DefinableSet(X, 0, tuple(tails)))
        else:
            out.append(down_closure(X.points_set([p])))
    return tuple(out)


def _compare(g: FanMap, E: DefinableSet, condition: str) -> Witness | None:
    lhs = preimage(g, spectral_closure(E))
    rhs = spectral_closure(preimage(g, E))
    if lhs != rhs:
        return Witness(condition, E, lhs, rhs)
    return None


def es_failure(g: FanMap, fresh: tuple[int, ...]) -> Witness | None:
    cod = g.cod
    pts: list[Point] = list(range(cod.n_skeleton)) + [(s, fresh[0]) for s in range(len(cod.tails))]
    for y in pts:
        single = cod.points_set([y])
        lhs = preimage(g, down_closure(single))
        rhs = down_closure(preimage(g, single))
        if lhs != rhs:
            return Witness("es", single, lhs, rhs)
    return None


def es_plus_failure(g: FanMap, fresh: tuple[int, ...]) -> Witness | None:
    for E in constructible_generators(g.cod, fresh):
        w = _compare(g, E, "es_plus")
        if w:
            return w
    return None


def es_star_failure(g: FanMap, fresh: tuple[int, ...]) -> Witness | None:
    for D in downset_generators(g.cod, fresh):
        w = _compare(g, D, "es_star")
        if w:
            return w
    return None


def spectral_open_failure(g: FanMap, fresh: tuple[int, ...]) -> Witness | None:
    for U in least_open_upsets(g.dom, fresh):
        img = image(g, U)
        if not (is_open(img) and is_upset_def(img)):
            return Witness("spectral_open", U, img, None, "image is not an open upset")
    return None


def classify(f: FanMap, depth: int = 1, strict: bool = True) -> Verdict:
    w = es_minus_failure(f)
    if w is not None:
        v = Verdict(False, False, False, False, False, {"es_minus": w})
    else:
        g = normalize(f).map
        fresh = fresh_for(g, depth)
        found = {
            "es": es_failure(g, fresh),
            "es_plus": es_plus_failure(g, fresh),
            "es_star": es_star_failure(g, fresh),
        }
        flags = {k: found[k] is None for k in found}
        wit = {k: x for k, x in found.items() if x is not None}
        dagger = flags["es_plus"] and flags["es_star"]
        if not dagger:
            wit["es_dagger"] = Witness("es_dagger", "needs es_plus and es_star")
        v = Verdict(True, flags["es"], flags["es_plus"], flags["es_star"], dagger, wit)
    if strict and v.violations():
        raise InvariantViolation(f"{v.violations()} for {f}")
    return v


def is_es_minus(f: FanMap) -> bool:
    return es_minus_failure(f) is None


def is_es(f: FanMap, depth: int = 1) -> bool:
    return classify(f, depth).es


def is_es_plus(f: FanMap, depth: int = 1) -> bool:
    return classify(f, depth).es_plus


def is_es_star(f: FanMap, depth: int = 1) -> bool:
    return classify(f, depth).es_star


def is_spectral_open(f: FanMap, depth: int = 1) -> bool:
    if es_minus_failure(f) is not None:
        return False
    g = normalize(f).map
    return spectral_open_failure(g, fresh_for(g, depth)) is None


# cross-check against the algebra of open upsets ------------------------------

def _implication_failure(g: FanMap, basis) -> tuple | None:
    for U in basis:
        pu = preimage(g, U)
        for V in basis:
            lhs = preimage(g, open_upset_implication(U, V))
            rhs = open_upset_implication(pu, preimage(g, V))
            if lhs != rhs:
                return (U, V, lhs, rhs)
    return None


def _meet_failure(g: FanMap, basis) -> tuple | None:
    for D in basis:
        S = complement(D)
        lhs = preimage(g, largest_open_upset_in(S))
        rhs = largest_open_upset_in(preimage(g, S))
        if lhs != rhs:
            return (S, lhs, rhs)
    return None


def preimage_hom_check(f: FanMap, depth: int = 1) -> Report:
    """Compare each classifier flag with the matching property of ``f^-1`` on open upsets.

    Uses the full shape bases (not the generators), so it also tests the
    generator reduction inside :func:`classify`.
    """
    rep = Report()
    v = classify(f, depth)
    rep.add("es_minus", v.es_minus, v.witnesses.get("es_minus"))
    if not v.es_minus:
        return rep
    g = normalize(f).map
    fresh = fresh_for(g, depth)
    routes = [
        ("es", v.es, _implication_failure(g, fan.clopen_upset_basis(g.cod, fresh)), "clopen-upset implication"),
        ("es_plus", v.es_plus, _implication_failure(g, fan.open_upset_basis(g.cod, fresh)), "open-upset implication"),
        ("es_star", v.es_star, _meet_failure(g, fan.downset_basis(g.cod, fresh)), "open-upset meets"),
    ]
    for flag, direct, failure, what in routes:
        algebraic = failure is None
        witness = {"classifier": direct, what: algebraic}
        if failure is not None:
            witness["counterexample"] = [x.describe() for x in failure]
        rep.add(f"{flag}<->{what}", direct == algebraic, witness)
    return rep
