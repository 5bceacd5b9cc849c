"""Finite bounded lattices and the algebras of the duality.

A :class:`FinLattice` is a finite poset together with its meet and join
tables.  The same object serves as a finite frame, a Heyting algebra and,
through :class:`MeetSemilatticeView`, a meet-semilattice: a finite
meet-semilattice with a top has every join, so no second data structure is
needed.  What changes between the readings is which operations the
homomorphism predicates require to be preserved.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from . import poset as po
from .errors import NoResidual, NotALattice
from .poset import FinPoset, bits, to_mask


@dataclass(frozen=True, eq=False)
class FinLattice:
    order: FinPoset
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    labels: tuple | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return self.order.size

    @property
    def elements(self) -> range:
        return range(self.order.size)

    def leq(self, a: int, b: int) -> bool:
        return self.order.leq(a, b)

    def label(self, a: int):
        return self.labels[a] if self.labels is not None else a

    def index_of(self, label) -> int:
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels or range(self.size))}

    def meet_all(self, xs) -> int:
        out = self.top
        for x in xs:
            out = self.meet[out][x]
        return out

    def join_all(self, xs) -> int:
        out = self.bottom
        for x in xs:
            out = self.join[out][x]
        return out

    @cached_property
    def implication_table(self) -> tuple[tuple[int | None, ...], ...]:
        """``a -> b`` as the greatest ``c`` with ``a & c <= b``; ``None`` if absent."""
        rows = []
        for a in self.elements:
            row = []
            for b in self.elements:
                cands = [c for c in self.elements if self.leq(self.meet[a][c], b)]
                j = self.join_all(cands)
                row.append(j if self.leq(self.meet[a][j], b) else None)
            rows.append(tuple(row))
        return tuple(rows)

    def implies(self, a: int, b: int) -> int:
        r = self.implication_table[a][b]
        if r is None:
            raise NoResidual(a, b)
        return r

    def dual(self) -> FinLattice:
        return FinLattice(self.order.dual(), self.join, self.meet, self.top, self.bottom, self.labels)

    def __eq__(self, other):
        return isinstance(other, FinLattice) and self.order == other.order

    def __hash__(self):
        return hash(self.order)

    def __repr__(self):
        return f"FinLattice(size={self.size}, covers={self.order.covers()})"


def lattice_from_poset(P: FinPoset, labels: Sequence | None = None) -> FinLattice:
    """Compute meet/join tables or raise :class:`NotALattice` with a witness pair."""
    n = P.size
    tops = [i for i in range(n) if P.up[i] == 1 << i]
    bottoms = [i for i in range(n) if P.down[i] == 1 << i]
    if n == 0 or len(tops) != 1 or len(bottoms) != 1:
        raise NotALattice("missing top or bottom", witness=None)
    # the meet of i, j is the element whose principal downset is exactly their common lower bounds
    by_down = {P.down[i]: i for i in range(n)}
    by_up = {P.up[i]: i for i in range(n)}
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lower = P.down[i] & P.down[j]
            m = by_down.get(lower)
            if m is None:
                raise NotALattice(f"no meet of {i} and {j}", witness=(i, j))
            upper = P.up[i] & P.up[j]
            s = by_up.get(upper)
            if s is None:
                raise NotALattice(f"no join of {i} and {j}", witness=(i, j))
            meet[i][j] = meet[j][i] = m
            join[i][j] = join[j][i] = s
    return FinLattice(
        P,
        tuple(map(tuple, meet)),
        tuple(map(tuple, join)),
        bottoms[0],
        tops[0],
        tuple(labels) if labels is not None else None,
    )


def lattice_of_masks(masks: Sequence[int], labels: Sequence | None = None) -> FinLattice:
    """Lattice of a family of sets closed under union and intersection."""
    index = {m: i for i, m in enumerate(masks)}
    n = len(masks)
    up = tuple(to_mask(j for j in range(n) if masks[i] & ~masks[j] == 0) for i in range(n))
    P = FinPoset(n, up)
    meet = tuple(tuple(index[a & b] for b in masks) for a in masks)
    join = tuple(tuple(index[a | b] for b in masks) for a in masks)
    bottom = index[min(masks, key=lambda m: bin(m).count("1"))]
    top = index[max(masks, key=lambda m: bin(m).count("1"))]
    return FinLattice(P, meet, join, bottom, top, tuple(labels) if labels is not None else tuple(masks))


def inclusion_lattice(masks: Sequence[int], labels: Sequence | None = None) -> FinLattice:
    """Lattice of a family of sets under inclusion, joins computed from the order."""
    n = len(masks)
    up = tuple(to_mask(j for j in range(n) if masks[i] & ~masks[j] == 0) for i in range(n))
    return lattice_from_poset(FinPoset(n, up), labels if labels is not None else tuple(masks))


def chain_lattice(n: int) -> FinLattice:
    return lattice_from_poset(FinPoset.chain(n))


def is_distributive(A: FinLattice) -> bool:
    return distributivity_violation(A) is None


def distributivity_violation(A: FinLattice) -> tuple[int, int, int] | None:
    m, j = A.meet, A.join
    for x, y, z in itertools.product(A.elements, repeat=3):
        if m[x][j[y][z]] != j[m[x][y]][m[x][z]]:
            return (x, y, z)
    return None


def residual_violation(A: FinLattice) -> tuple[int, int] | None:
    for a in A.elements:
        for b in A.elements:
            if A.implication_table[a][b] is None:
                return (a, b)
    return None


def is_heyting_algebra(A: FinLattice) -> bool:
    return is_distributive(A) and residual_violation(A) is None


def downset_lattice(P: FinPoset) -> FinLattice:
    """Birkhoff: downsets of ``P`` under union and intersection.

    Labels are the downsets as frozensets.
    """
    masks = po.downset_masks(P)
    return lattice_of_masks(masks, [po.to_set(m) for m in masks])


def upset_lattice(P: FinPoset) -> FinLattice:
    masks = po.upset_masks(P)
    return lattice_of_masks(masks, [po.to_set(m) for m in masks])


def is_isomorphism(dom: FinLattice, cod: FinLattice, mapping: Sequence[int]) -> bool:
    if dom.size != cod.size or len(set(mapping)) != dom.size:
        return False
    return all(dom.leq(a, b) == cod.leq(mapping[a], mapping[b]) for a in dom.elements for b in dom.elements)


# meet-semilattice reading ----------------------------------------------------

@dataclass(frozen=True)
class MeetSemilatticeView:
    """Only meet and top are structure; join and bottom stay hidden."""

    base: FinLattice

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def elements(self) -> range:
        return self.base.elements

    @property
    def top(self) -> int:
        return self.base.top

    def meet(self, a: int, b: int) -> int:
        return self.base.meet[a][b]

    def leq(self, a: int, b: int) -> bool:
        return self.base.leq(a, b)

    def implication(self, a: int, b: int) -> int | None:
        """Brouwerian residual: greatest ``x`` with ``a & x <= b``, searched by order alone."""
        cands = [x for x in self.elements if self.leq(self.meet(a, x), b)]
        maxima = [x for x in cands if all(self.leq(y, x) for y in cands)]
        return maxima[0] if maxima else None

    def principal_filter(self, a: int) -> int:
        return self.base.order.up[a]


def distributive_ms_violation(A: MeetSemilatticeView) -> tuple[int, int, int] | None:
    for a, b, c in itertools.product(A.elements, repeat=3):
        if not A.leq(A.meet(a, b), c):
            continue
        ups_a = list(bits(A.base.order.up[a]))
        ups_b = list(bits(A.base.order.up[b]))
        if not any(A.meet(x, y) == c for x in ups_a for y in ups_b):
            return (a, b, c)
    return None


def is_distributive_ms(A: MeetSemilatticeView) -> bool:
    return distributive_ms_violation(A) is None


def is_brouwerian_semilattice(A: MeetSemilatticeView) -> bool:
    return all(A.implication(a, b) is not None for a in A.elements for b in A.elements)


# homomorphisms ---------------------------------------------------------------

@dataclass(frozen=True)
class AlgHom:
    dom: FinLattice
    cod: FinLattice
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.dom.size:
            raise ValueError("assignment must be total")

    def __call__(self, a: int) -> int:
        return self.assignment[a]

    def compose(self, other: AlgHom) -> AlgHom:
        """``self`` after ``other``."""
        return AlgHom(other.dom, self.cod, tuple(self(other(a)) for a in other.dom.elements))


def identity_hom(A: FinLattice) -> AlgHom:
    return AlgHom(A, A, tuple(A.elements))


SIGNATURES = {
    "dl": ("meet", "join", "bottom", "top"),
    "ms": ("meet", "top"),
    "ha": ("meet", "join", "bottom", "top", "imp"),
    "brw_ms": ("meet", "top", "imp"),
    "brw_a": ("meet", "join", "top", "imp"),
}


def hom_violation(h: AlgHom, signature: str):
    """First operation instance not preserved, e.g. ``("join", a, b)``; ``None`` if all are."""
    A, B = h.dom, h.cod
    ops = SIGNATURES[signature]
    if "top" in ops and h(A.top) != B.top:
        return ("top",)
    if "bottom" in ops and h(A.bottom) != B.bottom:
        return ("bottom",)
    for a in A.elements:
        for b in A.elements:
            if "meet" in ops and h(A.meet[a][b]) != B.meet[h(a)][h(b)]:
                return ("meet", a, b)
            if "join" in ops and h(A.join[a][b]) != B.join[h(a)][h(b)]:
                return ("join", a, b)
    if "imp" in ops:
        ia, ib = A.implication_table, B.implication_table
        for a in A.elements:
            for b in A.elements:
                lhs, rhs = ia[a][b], ib[h(a)][h(b)]
                if lhs is None or rhs is None or h(lhs) != rhs:
                    return ("imp", a, b)
    return None


def is_dl_hom(h: AlgHom) -> bool:
    return hom_violation(h, "dl") is None


def is_ms_hom(h: AlgHom) -> bool:
    return hom_violation(h, "ms") is None


def is_ha_hom(h: AlgHom) -> bool:
    return hom_violation(h, "ha") is None


def is_brw_semilattice_hom(h: AlgHom) -> bool:
    return hom_violation(h, "brw_ms") is None


def is_brw_algebra_hom(h: AlgHom) -> bool:
    return hom_violation(h, "brw_a") is None


def _irreducibles(A: FinLattice, dual: bool) -> list[int]:
    P = A.order.dual() if dual else A.order
    return sorted(po.join_irreducibles(P))


def dl_homs(A: FinLattice, B: FinLattice) -> Iterator[AlgHom]:
    """Every bounded-lattice homomorphism ``A -> B`` for distributive ``A``.

    A homomorphism is fixed by its values on join-irreducibles, so those
    are enumerated and extended by joins; the result is then checked.
    """
    ji = _irreducibles(A, dual=False)
    below = [[j for j in ji if A.leq(j, x)] for x in A.elements]
    for vals in itertools.product(B.elements, repeat=len(ji)):
        v = dict(zip(ji, vals))
        h = AlgHom(A, B, tuple(B.join_all(v[j] for j in below[x]) for x in A.elements))
        # values that the extension does not reproduce would give a duplicate
        if all(h(j) == v[j] for j in ji) and is_dl_hom(h):
            yield h


def ms_homs(A: FinLattice, B: FinLattice) -> Iterator[AlgHom]:
    """Every map preserving binary meets and top, via meet-irreducibles."""
    mi = _irreducibles(A, dual=True)
    above = [[m for m in mi if A.leq(x, m)] for x in A.elements]
    for vals in itertools.product(B.elements, repeat=len(mi)):
        v = dict(zip(mi, vals))
        h = AlgHom(A, B, tuple(B.meet_all(v[m] for m in above[x]) for x in A.elements))
        if all(h(m) == v[m] for m in mi) and is_ms_hom(h):
            yield h


# enumeration -----------------------------------------------------------------

def _adjoin_bounds(P: FinPoset) -> FinPoset:
    n = P.size
    pairs = [(0, i + 1) for i in range(n + 1)] + [(i + 1, n + 1) for i in range(n)]
    pairs += [(i + 1, j + 1) for i, j in P.pairs()]
    return FinPoset.from_pairs(n + 2, pairs)


@lru_cache(maxsize=None)
def _lattices_of_size(n: int) -> tuple[FinLattice, ...]:
    if n == 1:
        return (lattice_from_poset(FinPoset.chain(1)),)
    out = []
    for P in po.enumerate_posets(n - 2):
        try:
            out.append(lattice_from_poset(_adjoin_bounds(P)))
        except NotALattice:
            continue
    return tuple(out)


def enumerate_lattices(n: int, distributive_only: bool = False) -> Iterator[FinLattice]:
    """Lattices of size ``n`` up to isomorphism (interior posets of size ``n-2``)."""
    if n < 1:
        return
    for L in _lattices_of_size(n):
        if not distributive_only or is_distributive(L):
            yield L


@lru_cache(maxsize=None)
def distributive_lattices_up_to(max_size: int) -> tuple[FinLattice, ...]:
    """Distributive lattices with at most ``max_size`` elements, as downset lattices.

    Posets are grown by adding maximal elements; adding an element never
    decreases the number of downsets, so branches past the bound are cut.
    """
    seen: dict[tuple, FinPoset] = {}
    level = [FinPoset(0, ())]
    seen[()] = level[0]
    while level:
        nxt = []
        for P in level:
            for d in po.downset_masks(P):
                Q = po._extend(P, d)
                if len(po.downset_masks(Q)) > max_size:
                    continue
                code = po.canonical_labeling(Q)[0]
                if code not in seen:
                    seen[code] = po.canonical_form(Q)
                    nxt.append(seen[code])
        level = nxt
    Ps = sorted(seen.values(), key=lambda P: (P.size, po.canonical_labeling(P)[0]))
    out = [downset_lattice(P) for P in Ps]
    return tuple(sorted(out, key=lambda L: L.size))
