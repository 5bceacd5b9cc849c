"""Fan spaces: finite skeleton posets with countable tails converging to limits.

Points are skeleton indices ``i`` or tail points ``(t, n)`` with ``n`` not
in the tail's excluded set.  The order is the skeleton order plus
``(t, n) <= s`` for ``s`` in the tail's ``below`` upset; a tail point has
only itself below it.  Skeleton points are isolated except limit points,
whose neighbourhoods are the cofinite parts of their tails.  The result is
a compact ordered space (a finite union of one-point compactifications).

A :class:`DefinableSet` is a skeleton mask plus, per tail, a finite or
cofinite trace with finitely many exception indices.  All set, order and
topology operators below are exact on this representation.

Universal statements over subsets are decided on a *shape basis*: every
skeleton mask combined with per-tail traces whose exceptions are drawn from
a few fresh indices beyond every index the input mentions.  Tail indices
past that bound are interchangeable: any permutation of them is an
order-homeomorphism fixing everything mentioned, and a tail point's only
order relations are to ``below``.  So a condition over arbitrary sets only
depends on, per tail, whether the trace is finite or infinite (closure
adds the limit exactly for infinite traces) together with the membership
of individual generic points, and a representative fresh index stands for
all of them.  The Priestley validator is conservative: it only accepts
after exhibiting and re-checking a separating clopen upset for every
representative pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Union

from . import poset as po
from .errors import SpaceMismatch, StructureError
from .poset import FinPoset, bits, to_mask, to_set

Point = Union[int, tuple]


@dataclass(frozen=True)
class Tail:
    limit: int
    below: int
    excluded: frozenset = frozenset()
    name: str | None = field(default=None, compare=False)

    @property
    def below_set(self) -> frozenset[int]:
        return to_set(self.below)


@dataclass(frozen=True)
class FanSpace:
    skeleton: FinPoset
    limits: int
    tails: tuple[Tail, ...] = ()

    def __post_init__(self):
        P = self.skeleton
        if self.limits & ~P.full:
            raise StructureError("limit tag on a non-existent point", "tags")
        for k, t in enumerate(self.tails):
            path = f"tails[{k}]"
            if not 0 <= t.limit < P.size:
                raise StructureError(f"limit {t.limit} out of range", path + ".limit")
            if not self.limits >> t.limit & 1:
                raise StructureError(f"point {t.limit} is not tagged limit", path + ".limit")
            if t.below & ~P.full:
                raise StructureError("below mentions a non-existent point", path + ".below")
            if P.up_mask(t.below) != t.below:
                raise StructureError("below is not an upset of the skeleton", path + ".below")
            if any((not isinstance(n, int)) or n < 0 for n in t.excluded):
                raise StructureError("excluded indices must be naturals", path + ".excluded")

    @property
    def n_skeleton(self) -> int:
        return self.skeleton.size

    @cached_property
    def bound(self) -> int:
        """Largest excluded index, ``-1`` if none."""
        return max((n for t in self.tails for n in t.excluded), default=-1)

    @cached_property
    def tails_of(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for k, t in enumerate(self.tails):
            out.setdefault(t.limit, []).append(k)
        return {l: tuple(v) for l, v in out.items()}

    def name(self, p: Point) -> str:
        if isinstance(p, tuple):
            t, n = p
            tn = self.tails[t].name or f"t{t}"
            return f"{tn}[{n}]"
        return self.skeleton.name(p)

    def is_point(self, p: Point) -> bool:
        if isinstance(p, tuple):
            t, n = p
            return 0 <= t < len(self.tails) and isinstance(n, int) and n >= 0 and n not in self.tails[t].excluded
        return isinstance(p, int) and 0 <= p < self.n_skeleton

    def leq(self, p: Point, q: Point) -> bool:
        if isinstance(p, tuple):
            if isinstance(q, tuple):
                return p == q
            return bool(self.tails[p[0]].below >> q & 1)
        if isinstance(q, tuple):
            return False
        return self.skeleton.leq(p, q)

    def generic(self, t: int, n: int) -> tuple[int, int]:
        """The first tail index ``>= n`` that is not excluded."""
        while n in self.tails[t].excluded:
            n += 1
        return (t, n)

    # definable sets ---------------------------------------------------------

    def empty(self) -> DefinableSet:
        return DefinableSet(self, 0, tuple(FIN_EMPTY for _ in self.tails))

    def whole(self) -> DefinableSet:
        return DefinableSet(self, self.skeleton.full, tuple(COFIN_EMPTY for _ in self.tails))

    def points_set(self, pts: Iterable[Point]) -> DefinableSet:
        named = 0
        exc: list[set] = [set() for _ in self.tails]
        for p in pts:
            if not self.is_point(p):
                raise StructureError(f"{p!r} is not a point of the space")
            if isinstance(p, tuple):
                exc[p[0]].add(p[1])
            else:
                named |= 1 << p
        return DefinableSet(self, named, tuple(Trace(False, frozenset(e)) for e in exc))

    def make(self, named: Iterable[int] = (), tails: Iterable = ()) -> DefinableSet:
        tails = tuple(tails)
        if len(tails) != len(self.tails):
            raise StructureError("one trace per tail is required")
        return DefinableSet(self, to_mask(named), tuple(Trace(c, frozenset(e)) for c, e in tails))


@dataclass(frozen=True)
class Trace:
    cofinite: bool
    exceptions: frozenset = frozenset()

    @property
    def nonempty(self) -> bool:
        return self.cofinite or bool(self.exceptions)


FIN_EMPTY = Trace(False, frozenset())
COFIN_EMPTY = Trace(True, frozenset())


class DefinableSet:
    """Skeleton mask plus one :class:`Trace` per tail; exceptions avoid excluded indices."""

    __slots__ = ("space", "named", "tails", "_key")

    def __init__(self, space: FanSpace, named: int, tails: tuple[Trace, ...]):
        if len(tails) != len(space.tails):
            raise StructureError("one trace per tail is required")
        clean = []
        for tr, t in zip(tails, space.tails):
            if tr.exceptions & t.excluded:
                tr = Trace(tr.cofinite, tr.exceptions - t.excluded)
            clean.append(tr)
        self.space = space
        self.named = named & space.skeleton.full
        self.tails = tuple(clean)
        self._key = (self.named, self.tails)

    def __eq__(self, other):
        return isinstance(other, DefinableSet) and self._key == other._key and self.space == other.space

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"DefinableSet({self.describe()})"

    def __contains__(self, p: Point) -> bool:
        if isinstance(p, tuple):
            t, n = p
            if n in self.space.tails[t].excluded:
                return False
            tr = self.tails[t]
            return (n in tr.exceptions) != tr.cofinite
        return bool(self.named >> p & 1)

    def _same(self, other: DefinableSet):
        if other.space is not self.space and other.space != self.space:
            raise SpaceMismatch("definable sets live in different spaces")

    def __or__(self, other: DefinableSet) -> DefinableSet:
        return union(self, other)

    def __and__(self, other: DefinableSet) -> DefinableSet:
        return intersect(self, other)

    def __sub__(self, other: DefinableSet) -> DefinableSet:
        return difference(self, other)

    def __le__(self, other: DefinableSet) -> bool:
        return is_subset(self, other)

    @property
    def named_set(self) -> frozenset[int]:
        return to_set(self.named)

    def max_index(self) -> int:
        return max((n for tr in self.tails for n in tr.exceptions), default=-1)

    def describe(self) -> str:
        parts = [self.space.name(i) for i in bits(self.named)]
        for k, tr in enumerate(self.tails):
            tn = self.space.tails[k].name or f"t{k}"
            ex = sorted(tr.exceptions)
            if tr.cofinite:
                parts.append(f"{tn}[all]" if not ex else f"{tn}[all-{ex}]")
            elif ex:
                parts.append(f"{tn}{ex}")
        return "{" + ", ".join(parts) + "}"

    def as_json(self) -> dict:
        return {
            "named": sorted(bits(self.named)),
            "tails": [
                {"mode": "COFIN" if tr.cofinite else "FIN", "exceptions": sorted(tr.exceptions)}
                for tr in self.tails
            ],
        }


# boolean operations --------------------------------------------------------

def _union_trace(a: Trace, b: Trace) -> Trace:
    if a.cofinite and b.cofinite:
        return Trace(True, a.exceptions & b.exceptions)
    if a.cofinite:
        return Trace(True, a.exceptions - b.exceptions)
    if b.cofinite:
        return Trace(True, b.exceptions - a.exceptions)
    return Trace(False, a.exceptions | b.exceptions)


def _complement_trace(a: Trace) -> Trace:
    return Trace(not a.cofinite, a.exceptions)


def union(D: DefinableSet, E: DefinableSet) -> DefinableSet:
    D._same(E)
    return DefinableSet(D.space, D.named | E.named, tuple(map(_union_trace, D.tails, E.tails)))


def complement(D: DefinableSet) -> DefinableSet:
    X = D.space
    return DefinableSet(X, X.skeleton.full & ~D.named, tuple(map(_complement_trace, D.tails)))


def intersect(D: DefinableSet, E: DefinableSet) -> DefinableSet:
    D._same(E)
    return complement(union(complement(D), complement(E)))


def difference(D: DefinableSet, E: DefinableSet) -> DefinableSet:
    return intersect(D, complement(E))


def _trace_subset(a: Trace, b: Trace) -> bool:
    if a.cofinite:
        return b.cofinite and b.exceptions <= a.exceptions
    if b.cofinite:
        return not (a.exceptions & b.exceptions)
    return a.exceptions <= b.exceptions


def is_subset(D: DefinableSet, E: DefinableSet) -> bool:
    D._same(E)
    return D.named & ~E.named == 0 and all(map(_trace_subset, D.tails, E.tails))


# order operators ----------------------------------------------------------

def down_closure(D: DefinableSet) -> DefinableSet:
    X = D.space
    named = X.skeleton.down_mask(D.named)
    tails = tuple(COFIN_EMPTY if D.named & t.below else tr for tr, t in zip(D.tails, X.tails))
    return DefinableSet(X, named, tails)


def up_closure(D: DefinableSet) -> DefinableSet:
    X = D.space
    named = D.named
    for tr, t in zip(D.tails, X.tails):
        if tr.nonempty:
            named |= t.below
    return DefinableSet(X, X.skeleton.up_mask(named), D.tails)


def is_upset_def(D: DefinableSet) -> bool:
    return up_closure(D) == D


def is_downset_def(D: DefinableSet) -> bool:
    return down_closure(D) == D


# topology -------------------------------------------------------------------

def closure(D: DefinableSet) -> DefinableSet:
    X = D.space
    named = D.named
    for tr, t in zip(D.tails, X.tails):
        if tr.cofinite:
            named |= 1 << t.limit
    return DefinableSet(X, named, D.tails)


def interior(D: DefinableSet) -> DefinableSet:
    X = D.space
    named = D.named
    for tr, t in zip(D.tails, X.tails):
        if not tr.cofinite:
            named &= ~(1 << t.limit)
    return DefinableSet(X, named, D.tails)


def is_open(D: DefinableSet) -> bool:
    return interior(D) == D


def is_closed(D: DefinableSet) -> bool:
    return closure(D) == D


def is_clopen(D: DefinableSet) -> bool:
    return is_open(D) and is_closed(D)


def box(D: DefinableSet) -> DefinableSet:
    """Largest upset inside ``D``."""
    return complement(down_closure(complement(D)))


def spectral_closure(D: DefinableSet) -> DefinableSet:
    return down_closure(closure(D))


def open_upset_implication(U: DefinableSet, V: DefinableSet) -> DefinableSet:
    """``X - down cl(U - V)``, implication in the frame of open upsets."""
    return complement(spectral_closure(difference(U, V)))


# shape bases ----------------------------------------------------------------

def fresh_indices(start: int, depth: int) -> tuple[int, ...]:
    return tuple(range(start, start + max(depth, 1)))


def _exception_options(fresh: tuple[int, ...]) -> list[frozenset]:
    return [frozenset(c) for r in range(len(fresh) + 1) for c in itertools.combinations(fresh, r)]


def _trace_options(fresh: tuple[int, ...], cofinite: bool | None = None) -> list[Trace]:
    modes = (False, True) if cofinite is None else (cofinite,)
    return [Trace(m, e) for m in modes for e in _exception_options(fresh)]


def shape_basis(X: FanSpace, fresh: tuple[int, ...]) -> Iterator[DefinableSet]:
    """Every skeleton mask with every per-tail trace over the fresh exceptions."""
    opts = _trace_options(fresh)
    for named in range(1 << X.n_skeleton):
        for tails in itertools.product(opts, repeat=len(X.tails)):
            yield DefinableSet(X, named, tails)


@lru_cache(maxsize=4096)
def clopen_basis(X: FanSpace, fresh: tuple[int, ...]) -> tuple[DefinableSet, ...]:
    """Clopen members of the shape basis: a tail is cofinite iff its limit is named."""
    fin, cof = _trace_options(fresh, False), _trace_options(fresh, True)
    out = []
    for named in range(1 << X.n_skeleton):
        choices = [cof if named >> t.limit & 1 else fin for t in X.tails]
        for tails in itertools.product(*choices):
            out.append(DefinableSet(X, named, tails))
    return tuple(out)


@lru_cache(maxsize=4096)
def clopen_upset_basis(X: FanSpace, fresh: tuple[int, ...]) -> tuple[DefinableSet, ...]:
    return tuple(D for D in clopen_basis(X, fresh) if is_upset_def(D))


@lru_cache(maxsize=4096)
def open_upset_basis(X: FanSpace, fresh: tuple[int, ...]) -> tuple[DefinableSet, ...]:
    """Open upsets of the shape basis; the skeleton part ranges over skeleton upsets."""
    opts = _trace_options(fresh)
    out = []
    for named in po.upset_masks(X.skeleton):
        for tails in itertools.product(opts, repeat=len(X.tails)):
            D = DefinableSet(X, named, tails)
            if is_open(D) and is_upset_def(D):
                out.append(D)
    return tuple(out)


@lru_cache(maxsize=4096)
def downset_basis(X: FanSpace, fresh: tuple[int, ...]) -> tuple[DefinableSet, ...]:
    """Canonical downsets: skeleton downsets, tails forced full where the skeleton part meets ``below``."""
    opts = _trace_options(fresh)
    out = []
    for named in po.downset_masks(X.skeleton):
        choices = [[COFIN_EMPTY] if named & t.below else opts for t in X.tails]
        for tails in itertools.product(*choices):
            out.append(DefinableSet(X, named, tails))
    return tuple(out)


# validation -----------------------------------------------------------------

@dataclass(frozen=True)
class SpaceVerdict:
    priestley: bool
    esakia: bool
    esakia_routes: tuple[bool, bool]
    certificates: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        assert self.priestley or not self.esakia

    @property
    def routes_agree(self) -> bool:
        return self.esakia_routes[0] == self.esakia_routes[1]


def representative_points(X: FanSpace, fresh: tuple[int, ...]) -> list[Point]:
    pts: list[Point] = list(range(X.n_skeleton))
    for t in range(len(X.tails)):
        pts.extend((t, f) for f in fresh)
    return pts


def priestley_failure(X: FanSpace, depth: int = 2):
    """``None`` if every representative pair ``x </= y`` is separated, else the pair."""
    fresh = fresh_indices(X.bound + 1, max(depth, 2))
    catalog = clopen_upset_basis(X, fresh)
    pts = representative_points(X, fresh[:2])
    for x in pts:
        for y in pts:
            if X.leq(x, y):
                continue
            if not any(x in U and y not in U for U in catalog):
                return (x, y)
    return None


def esakia_failure_by_downsets(X: FanSpace, depth: int = 1):
    """A clopen ``C`` of the basis whose downset is not clopen."""
    fresh = fresh_indices(X.bound + 1, depth)
    for C in clopen_basis(X, fresh):
        if not is_clopen(down_closure(C)):
            return C
    return None


def esakia_failure_by_implication(X: FanSpace, depth: int = 1):
    """Clopen upsets ``U, V`` of the basis with ``U -> V`` not clopen."""
    fresh = fresh_indices(X.bound + 1, depth)
    cu = clopen_upset_basis(X, fresh)
    for U in cu:
        for V in cu:
            if not is_clopen(open_upset_implication(U, V)):
                return (U, V)
    return None


def validate(X: FanSpace, depth: int = 1) -> SpaceVerdict:
    certs: dict = {}
    sep = priestley_failure(X, depth + 1)
    if sep is not None:
        certs["priestley"] = {"unseparated": [X.name(sep[0]), X.name(sep[1])]}
    a = esakia_failure_by_downsets(X, depth)
    b = esakia_failure_by_implication(X, depth)
    if a is not None:
        certs["esakia_downset"] = {"clopen": a.describe(), "downset": down_closure(a).describe()}
    if b is not None:
        U, V = b
        certs["esakia_implication"] = {
            "U": U.describe(),
            "V": V.describe(),
            "U-V": difference(U, V).describe(),
            "U->V": open_upset_implication(U, V).describe(),
        }
    priestley = sep is None
    routes = (a is None, b is None)
    return SpaceVerdict(priestley, priestley and routes[0], routes, certs)


def embed_finite_poset(P: FinPoset) -> FanSpace:
    return FanSpace(P, 0, ())


def sample_points(X: FanSpace, extra: int = 3) -> list[Point]:
    """Skeleton points and tail indices up to ``bound + extra``: enough to compare definable sets."""
    pts: list[Point] = list(range(X.n_skeleton))
    top = X.bound + extra
    for t, tail in enumerate(X.tails):
        pts.extend((t, n) for n in range(top + 1) if n not in tail.excluded)
    return pts


def membership_difference(D: DefinableSet, E: DefinableSet, extra: int = 3):
    """A sampled point in exactly one of ``D``, ``E`` (``None`` if they agree on the sample)."""
    D._same(E)
    extra = max(extra, D.max_index() - D.space.bound, E.max_index() - D.space.bound) + 1
    for p in sample_points(D.space, extra):
        if (p in D) != (p in E):
            return p
    return None
