"""Priestley/Esakia duality and coherent frames at finite scale.

A finite Priestley space is a finite poset with the discrete topology, so
closure and interior are identities and the spectral closure is the
downset operator.  Every construction here is definitional (filters,
ideals and compact elements are searched for, not assumed principal) so
that the finite collapses can be asserted rather than built in.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import algebra as al
from . import poset as po
from .algebra import AlgHom, FinLattice
from .errors import NotAFrame
from .poset import FinPoset, PosetMap, bits, to_mask, to_set
from .report import Report


# prime filters --------------------------------------------------------------

def is_filter(A: FinLattice, mask: int) -> bool:
    if mask == 0 or A.order.up_mask(mask) != mask:
        return False
    members = list(bits(mask))
    return all(mask >> A.meet[a][b] & 1 for a in members for b in members)


def is_prime_filter(A: FinLattice, mask: int) -> bool:
    if not is_filter(A, mask) or mask == A.order.full:
        return False
    for a in A.elements:
        for b in A.elements:
            if mask >> A.join[a][b] & 1 and not (mask >> a & 1 or mask >> b & 1):
                return False
    return True


@lru_cache(maxsize=None)
def filter_masks(A: FinLattice) -> tuple[int, ...]:
    """All filters, found among the upsets of the order."""
    return tuple(m for m in po.upset_masks(A.order) if is_filter(A, m))


@dataclass(frozen=True, eq=False)
class PrimeFilterSpace:
    base: FinLattice
    filters: tuple[frozenset[int], ...]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(F) for F in self.filters)

    @cached_property
    def poset(self) -> FinPoset:
        ms = self.masks
        up = tuple(to_mask(j for j in range(len(ms)) if ms[i] & ~ms[j] == 0) for i in range(len(ms)))
        return FinPoset(len(ms), up)

    def index(self, F: Iterable[int]) -> int:
        return self.masks.index(to_mask(F))

    @property
    def size(self) -> int:
        return len(self.filters)


def _sort_key(mask: int):
    return (bin(mask).count("1"), mask)


@lru_cache(maxsize=None)
def prime_filters(A: FinLattice) -> PrimeFilterSpace:
    masks = sorted((m for m in filter_masks(A) if is_prime_filter(A, m)), key=_sort_key)
    return PrimeFilterSpace(A, tuple(to_set(m) for m in masks))


def stone_map(A: FinLattice, a: int) -> frozenset[int]:
    X = prime_filters(A)
    return frozenset(i for i, m in enumerate(X.masks) if m >> a & 1)


def clopup(X: FinPoset) -> FinLattice:
    """Clopen upsets of a finite (discrete) Priestley space: all upsets."""
    return al.upset_lattice(X)


def clopup_implication(X: FinPoset, U: Iterable[int], V: Iterable[int]) -> frozenset[int]:
    u, v = to_mask(U), to_mask(V)
    return to_set(X.full & ~X.down_mask(u & ~v))


def dual_of_hom(h: AlgHom) -> PosetMap:
    """``pf(h)``: prime filter ``F`` of the codomain goes to ``h^-1(F)``."""
    XA, XB = prime_filters(h.dom), prime_filters(h.cod)
    index = {m: i for i, m in enumerate(XA.masks)}
    out = []
    for m in XB.masks:
        pre = to_mask(a for a in h.dom.elements if m >> h(a) & 1)
        if pre not in index:
            raise ValueError(f"preimage {sorted(to_set(pre))} is not a prime filter")
        out.append(index[pre])
    f = PosetMap(XB.poset, XA.poset, tuple(out))
    assert po.is_order_preserving(f)
    return f


def preimage_hom(f: PosetMap) -> AlgHom | None:
    """``f^-1 : ClopUp(cod) -> ClopUp(dom)``, or ``None`` if some preimage is no upset."""
    A, B = clopup(f.cod), clopup(f.dom)
    index = {to_mask(lab): i for i, lab in enumerate(B.labels)}
    out = []
    for lab in A.labels:
        pre = f.preimage_mask(to_mask(lab))
        if pre not in index:
            return None
        out.append(index[pre])
    return AlgHom(A, B, tuple(out))


def space_unit(X: FinPoset) -> PosetMap:
    """``x`` goes to the prime filter ``{U : x in U}`` of ``ClopUp(X)``."""
    A = clopup(X)
    XA = prime_filters(A)
    out = []
    for x in range(X.size):
        F = to_mask(i for i, lab in enumerate(A.labels) if x in lab)
        out.append(XA.masks.index(F))
    return PosetMap(X, XA.poset, tuple(out))


def algebra_unit(A: FinLattice) -> AlgHom:
    """The Stone map ``A -> ClopUp(pf(A))``."""
    C = clopup(prime_filters(A).poset)
    return AlgHom(A, C, tuple(C.index_of(stone_map(A, a)) for a in A.elements))


def is_poset_iso(f: PosetMap) -> bool:
    if f.dom.size != f.cod.size or len(set(f.assignment)) != f.dom.size:
        return False
    return all(f.dom.leq(i, j) == f.cod.leq(f(i), f(j)) for i in range(f.dom.size) for j in range(f.dom.size))


# ideals ---------------------------------------------------------------------

def is_ideal(A: FinLattice, mask: int) -> bool:
    if mask == 0 or A.order.down_mask(mask) != mask:
        return False
    members = list(bits(mask))
    return all(mask >> A.join[a][b] & 1 for a in members for b in members)


@lru_cache(maxsize=None)
def ideal_masks(A: FinLattice) -> tuple[int, ...]:
    return tuple(sorted((m for m in po.downset_masks(A.order) if is_ideal(A, m)), key=_sort_key))


@dataclass(frozen=True, eq=False)
class IdealFrame:
    base: FinLattice
    lattice: FinLattice
    principal: tuple[int, ...]

    def ideal(self, i: int) -> frozenset[int]:
        return self.lattice.labels[i]

    def index(self, I: Iterable[int]) -> int:
        return self.lattice.index_of(frozenset(I))


@lru_cache(maxsize=None)
def ideal_frame(A: FinLattice) -> IdealFrame:
    """``J(A)``; ``principal[a]`` is the index of ``down a`` (every ideal is principal here)."""
    masks = ideal_masks(A)
    L = al.inclusion_lattice(masks, [to_set(m) for m in masks])
    principal = tuple(L.index_of(to_set(A.order.down[a])) for a in A.elements)
    assert sorted(principal) == list(range(L.size)), "a non-principal ideal in a finite lattice"
    return IdealFrame(A, L, principal)


def ideal_implication(A: FinLattice, I: Iterable[int], J: Iterable[int]) -> frozenset[int]:
    I, J = frozenset(I), frozenset(J)
    return frozenset(a for a in A.elements if all(A.meet[a][b] in J for b in I))


def h_star(h: AlgHom) -> AlgHom:
    """``I`` goes to ``down h[I]``, as a map between ideal frames."""
    JA, JB = ideal_frame(h.dom), ideal_frame(h.cod)
    out = []
    for lab in JA.lattice.labels:
        img = h.cod.order.down_mask(to_mask(h(a) for a in lab))
        out.append(JB.lattice.index_of(to_set(img)))
    return AlgHom(JA.lattice, JB.lattice, tuple(out))


def preserves_compact_implication(hs: AlgHom, KA: Sequence[int]) -> tuple[int, int] | None:
    """Pair of compact elements on which ``hs`` fails to preserve implication."""
    L, M = hs.dom, hs.cod
    for a in KA:
        for b in KA:
            if hs(L.implies(a, b)) != M.implies(hs(a), hs(b)):
                return (a, b)
    return None


# frames ---------------------------------------------------------------------

class FrameView:
    """A finite lattice read as a frame.  Finite distributive lattices are frames."""

    def __init__(self, base: FinLattice):
        w = al.distributivity_violation(base)
        if w is not None:
            raise NotAFrame(f"not distributive at {w}")
        self.base = base

    @cached_property
    def ideals(self) -> tuple[int, ...]:
        return ideal_masks(self.base)

    def _sup(self, mask: int) -> int:
        return self.base.join_all(bits(mask))

    def way_below(self, a: int, b: int) -> bool:
        """Every directed set with join above ``b`` has a member above ``a``.

        Directed subsets are quantified through the ideals they generate.
        """
        return all(I >> a & 1 for I in self.ideals if self.base.leq(b, self._sup(I)))

    def is_compact(self, a: int) -> bool:
        return self.way_below(a, a)

    @cached_property
    def compact(self) -> frozenset[int]:
        return frozenset(a for a in self.base.elements if self.is_compact(a))

    @cached_property
    def compact_sublattice(self) -> FinLattice:
        ks = sorted(self.compact)
        idx = {k: i for i, k in enumerate(ks)}
        L = self.base
        up = tuple(to_mask(idx[j] for j in ks if L.leq(k, j)) for k in ks)
        meet = tuple(tuple(idx[L.meet[a][b]] for b in ks) for a in ks)
        join = tuple(tuple(idx[L.join[a][b]] for b in ks) for a in ks)
        return FinLattice(FinPoset(len(ks), up), meet, join, idx[L.bottom], idx[L.top], tuple(ks))

    @cached_property
    def filters(self) -> tuple[int, ...]:
        return filter_masks(self.base)

    def is_completely_prime(self, mask: int) -> bool:
        # a filter P is completely prime iff the join of its complement lies outside P
        return not mask >> self._sup(self.base.order.full & ~mask) & 1

    @cached_property
    def points(self) -> tuple[frozenset[int], ...]:
        ms = sorted((m for m in self.filters if self.is_completely_prime(m)), key=_sort_key)
        return tuple(to_set(m) for m in ms)


def compact_elements(L: FrameView) -> frozenset[int]:
    return L.compact


def way_below(L: FrameView, a: int, b: int) -> bool:
    return L.way_below(a, b)


def points(L: FrameView) -> tuple[frozenset[int], ...]:
    return L.points


def points_poset(L: FrameView) -> FinPoset:
    ms = [to_mask(P) for P in L.points]
    up = tuple(to_mask(j for j in range(len(ms)) if ms[i] & ~ms[j] == 0) for i in range(len(ms)))
    return FinPoset(len(ms), up)


def pt_pf_iso(L: FrameView) -> PosetMap:
    """``P`` goes to ``P & K(L)`` as a prime filter of the compact sublattice; verified."""
    K = L.compact_sublattice
    XK = prime_filters(K)
    out = []
    for P in L.points:
        restricted = to_mask(i for i, k in enumerate(K.labels) if k in P)
        out.append(XK.masks.index(restricted))
    f = PosetMap(points_poset(L), XK.poset, tuple(out))
    if not is_poset_iso(f):
        raise AssertionError("points and prime filters of K(L) disagree")
    # inverse direction: the upset of F in L is the point
    for i, m in enumerate(XK.masks):
        up = L.base.order.up_mask(to_mask(K.labels[j] for j in bits(m)))
        assert to_set(up) == L.points[out.index(i)]
    return f


def heyting_frame_routes(L: FrameView) -> tuple[bool, bool]:
    """(compacts closed under the frame's implication, compact sublattice is Heyting)."""
    K = L.compact
    A = L.base
    bounded = A.top in K and A.bottom in K and all(A.meet[a][b] in K and A.join[a][b] in K for a in K for b in K)
    route_sub = bounded and all(A.implies(a, b) in K for a in K for b in K)
    route_alg = bounded and al.is_heyting_algebra(L.compact_sublattice)
    return route_sub, route_alg


def is_heyting_frame(L: FrameView) -> bool:
    a, b = heyting_frame_routes(L)
    if a != b:
        raise AssertionError("the two Heyting-frame characterizations disagree")
    return a


def subfit_violation(L: FinLattice) -> tuple[int, int] | None:
    for a in L.elements:
        for b in L.elements:
            if L.leq(a, b):
                continue
            if not any(L.join[a][c] == L.top and L.join[b][c] != L.top for c in L.elements):
                return (a, b)
    return None


def is_subfit(L: FinLattice) -> bool:
    return subfit_violation(L) is None


# the triangle ---------------------------------------------------------------

def _kj_iso(A: FinLattice) -> AlgHom:
    """``A -> K(J(A))``, ``a`` to ``down a``."""
    J = ideal_frame(A)
    F = FrameView(J.lattice)
    K = F.compact_sublattice
    return AlgHom(A, K, tuple(K.index_of(J.principal[a]) for a in A.elements))


def _pt_pf(A: FinLattice) -> PosetMap:
    """``pt(J(A)) -> pf(A)``: point to its restriction to principal ideals."""
    J = ideal_frame(A)
    F = FrameView(J.lattice)
    XA = prime_filters(A)
    out = []
    for P in F.points:
        m = to_mask(a for a in A.elements if J.principal[a] in P)
        out.append(XA.masks.index(m) if m in XA.masks else -1)
    if -1 in out:
        raise AssertionError("a point does not restrict to a prime filter")
    return PosetMap(points_poset(F), XA.poset, tuple(out))


def check_triangle_dl(A: FinLattice, homs: Iterable[AlgHom] = ()) -> Report:
    """Object-level isomorphisms of the DL / CohFrm / PS triangle, plus naturality squares."""
    r = Report()
    if not al.is_distributive(A):
        r.add("distributive", False, al.distributivity_violation(A))
        return r
    kj = _kj_iso(A)
    r.add("K(J(A))~A", al.is_isomorphism(A, kj.cod, kj.assignment) and al.is_dl_hom(kj), kj.assignment)
    try:
        pp = _pt_pf(A)
        ok = is_poset_iso(pp)
        pt_pf_iso(FrameView(ideal_frame(A).lattice))
    except AssertionError as e:
        pp, ok = None, False
        r.add("pt(J(A))~pf(A)", False, str(e))
    else:
        r.add("pt(J(A))~pf(A)", ok, pp.assignment)
    st = algebra_unit(A)
    r.add("ClopUp(pf(A))~A", al.is_isomorphism(A, st.cod, st.assignment) and al.is_dl_hom(st), st.assignment)
    for n, h in enumerate(homs):
        r.extend(naturality_squares(h), prefix=f"hom[{n}].")
    return r


def naturality_squares(h: AlgHom) -> Report:
    r = Report()
    A, B = h.dom, h.cod
    # K(J(-)): iso_B . h == K(h*) . iso_A
    ia, ib, hs = _kj_iso(A), _kj_iso(B), h_star(h)
    KA, KB = ia.cod, ib.cod
    bad = [a for a in A.elements if KB.labels[ib(h(a))] != hs(KA.labels[ia(a)])]
    r.add("square.K(J)", not bad, bad[:1] or None)
    # Stone: phi_B . h == pf(h)^-1 . phi_A
    f = dual_of_hom(h)
    bad = [a for a in A.elements if stone_map(B, h(a)) != to_set(f.preimage_mask(to_mask(stone_map(A, a))))]
    r.add("square.ClopUp(pf)", not bad, bad[:1] or None)
    # points: pf(h) . (pt->pf)_B == (pt->pf)_A . pt(h*)
    JA, JB = ideal_frame(A), ideal_frame(B)
    FA, FB = FrameView(JA.lattice), FrameView(JB.lattice)
    ptA, ptB = _pt_pf(A), _pt_pf(B)
    bad = []
    for i, P in enumerate(FB.points):
        pre = frozenset(I for I in JA.lattice.elements if hs(I) in P)  # pt(h*) = (h*)^-1
        j = FA.points.index(pre)
        if f(ptB(i)) != ptA(j):
            bad.append(i)
    r.add("square.pt(J)", not bad, bad[:1] or None)
    return r
