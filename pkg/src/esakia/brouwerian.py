"""Meet-semilattices without assumed bottom, their pointed spectra and filter frames.

Everything here is finite.  Two coincidences that only hold at this scale
are checked rather than assumed: optimal filters are exactly the prime
filters, and pseudoprime elements of a frame are exactly its primes (the
way-below relation of a finite frame is its order).  A finite
meet-semilattice with a top also has every join, so a
:class:`MeetSemilatticeView` over a :class:`FinLattice` covers all
inputs; joins are only consulted where a definition asks for existing
joins.

Topologies of pointed spaces are explicit families of open sets (bitmasks)
generated from a subbasis, so the space conditions are checked literally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import algebra as al
from . import duality as du
from . import poset as po
from .algebra import AlgHom, FinLattice, MeetSemilatticeView
from .errors import StructureError
from .poset import FinPoset, PosetMap, bits, to_mask, to_set
from .report import Report


def _popkey(m: int):
    return (bin(m).count("1"), m)


# filters of a meet-semilattice ------------------------------------------------

def ms_filter_masks(A: MeetSemilatticeView) -> tuple[int, ...]:
    """Nonempty upsets closed under meet."""
    return du.filter_masks(A.base)


def _require_distributive(A: MeetSemilatticeView):
    w = al.distributive_ms_violation(A)
    if w is not None:
        raise StructureError(f"not a distributive meet-semilattice at {w}")


@lru_cache(maxsize=None)
def _prime_ms(A: MeetSemilatticeView) -> tuple[int, ...]:
    fs = ms_filter_masks(A)
    whole = A.base.order.full
    out = []
    for F in fs:
        if F == whole:
            continue
        # meet-prime in the frame of filters, where meet is intersection
        if all(G & ~F == 0 or H & ~F == 0 for G in fs for H in fs if G & H & ~F == 0):
            out.append(F)
    return tuple(sorted(out, key=_popkey))


@lru_cache(maxsize=None)
def _optimal_ms(A: MeetSemilatticeView) -> tuple[int, ...]:
    up = A.base.order.up
    whole = A.base.order.full
    out = []
    for F in ms_filter_masks(A):
        outside = [a for a in A.elements if not F >> a & 1]
        ok = True
        for r in range(len(outside) + 1):
            for S in itertools.combinations(outside, r):
                common = whole
                for s in S:
                    common &= up[s]
                # every c with common <= up c must avoid F
                if any(F >> c & 1 and common & ~up[c] == 0 for c in A.elements):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(F)
    return tuple(sorted(out, key=_popkey))


def prime_filters_ms(A: MeetSemilatticeView) -> list[frozenset[int]]:
    _require_distributive(A)
    return [to_set(F) for F in _prime_ms(A)]


def optimal_filters(A: MeetSemilatticeView) -> list[frozenset[int]]:
    _require_distributive(A)
    return [to_set(F) for F in _optimal_ms(A)]


# pointed generalized spaces ---------------------------------------------------

def generate_topology(n: int, subbasis: Iterable[int]) -> frozenset[int]:
    full = (1 << n) - 1
    basis = {full}
    for s in subbasis:
        basis |= {b & s for b in basis}
    opens = {0}
    for b in sorted(basis):
        opens |= {o | b for o in opens}
    return frozenset(opens)


def discrete_topology(n: int) -> frozenset[int]:
    return frozenset(range(1 << n))


@dataclass(frozen=True)
class PointedGenSpace:
    poset: FinPoset
    x0: int
    m: int
    opens: frozenset = None
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        P = self.poset
        if self.opens is None:
            object.__setattr__(self, "opens", discrete_topology(P.size))
        if not 0 <= self.m < P.size:
            raise StructureError("m is not a point", "m")
        if P.down[self.m] != P.full:
            raise StructureError("m is not the maximum", "m")
        if self.x0 & ~P.full or self.x0 >> self.m & 1:
            raise StructureError("X0 must be a subset of X without m", "x0")
        if 0 not in self.opens or P.full not in self.opens:
            raise StructureError("topology must contain the empty set and the whole space", "opens")

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def full(self) -> int:
        return self.poset.full

    def name(self, i: int) -> str:
        return self.poset.name(i)

    def is_clopen(self, U: int) -> bool:
        return U in self.opens and self.full & ~U in self.opens

    def is_admissible(self, U: int) -> bool:
        P = self.poset
        if P.up_mask(U) != U or not self.is_clopen(U):
            return False
        outside = self.full & ~U
        return outside & ~P.down_mask(self.x0 & outside) == 0

    @cached_property
    def admissibles(self) -> tuple[int, ...]:
        return tuple(U for U in po.upset_masks(self.poset) if self.is_admissible(U))

    def ideal_at(self, x: int) -> tuple[int, ...]:
        """Admissible sets missing ``x``."""
        return tuple(U for U in self.admissibles if not U >> x & 1)


def admissible_sets(X: PointedGenSpace) -> list[frozenset[int]]:
    return [to_set(U) for U in X.admissibles]


def _directedness(X: PointedGenSpace, x: int) -> str:
    I = X.ideal_at(x)
    if not I:
        return "empty"
    for U in I:
        for V in I:
            if not any((U | V) & ~W == 0 for W in I):
                return "not directed"
    return "directed"


def pgps_report(X: PointedGenSpace) -> Report:
    """Each defining condition of a pointed generalized Priestley space, with diagnostics."""
    r = Report()
    P = X.poset
    cu = [U for U in po.upset_masks(P) if X.is_clopen(U)]
    sep = None
    for x in range(X.size):
        for y in range(X.size):
            if not P.leq(x, y) and not any(U >> x & 1 and not U >> y & 1 for U in cu):
                sep = [X.name(x), X.name(y)]
                break
        if sep:
            break
    r.add("pointed-priestley", sep is None, sep and {"unseparated": sep})
    rest = X.full & ~(1 << X.m)
    uncovered = rest & ~P.down_mask(X.x0)
    r.add("x0-cofinal", uncovered == 0, {"not below X0": [X.name(i) for i in bits(uncovered)]} if uncovered else None)
    dense_gap = [o for o in X.opens if o & rest and not o & X.x0]
    gap = min(dense_gap, default=None)
    r.add("x0-dense", not dense_gap, None if gap is None else {"open set missing X0": [X.name(i) for i in bits(gap)]})
    bad = []
    for x in range(X.size):
        state = _directedness(X, x)
        if (state == "directed") != bool(X.x0 >> x & 1):
            bad.append({"point": X.name(x), "in X0": bool(X.x0 >> x & 1), "ideal": state})
    r.add("x0-by-directed-ideals", not bad, bad or None)
    bad = []
    for x in range(X.size):
        for y in range(X.size):
            by_sets = all(U >> y & 1 for U in X.admissibles if U >> x & 1)
            if by_sets != P.leq(x, y):
                bad.append([X.name(x), X.name(y)])
    r.add("order-by-admissibles", not bad, bad[:1] or None)
    return r


def validate_pgps(X: PointedGenSpace) -> bool:
    return pgps_report(X).ok


def pges_failure(X: PointedGenSpace) -> tuple[int, int] | None:
    P = X.poset
    for U in X.admissibles:
        for V in X.admissibles:
            if not X.is_clopen(P.down_mask(U & ~V)):
                return (U, V)
    return None


def validate_pges(X: PointedGenSpace) -> bool:
    return validate_pgps(X) and pges_failure(X) is None


def admissible_implication(X: PointedGenSpace, U: int, V: int) -> int | None:
    """Greatest admissible ``W`` with ``U & W <= V``."""
    cands = [W for W in X.admissibles if U & W & ~V == 0]
    top = [W for W in cands if all(C & ~W == 0 for C in cands)]
    return top[0] if top else None


def _differences(X: PointedGenSpace) -> set[int]:
    return {U & ~V for U in X.admissibles for V in X.admissibles}


def is_e_clopen(X: PointedGenSpace, E: Iterable[int]) -> bool:
    """``E`` is a finite union of differences of admissible sets."""
    target = to_mask(E)
    covered = 0
    for D in _differences(X):
        if D & ~target == 0:
            covered |= D
    return covered == target


def e_clopen_by_search(X: PointedGenSpace, E: Iterable[int]) -> bool:
    """Exhaustive search over families of differences; oracle for :func:`is_e_clopen`."""
    target = to_mask(E)
    diffs = sorted(_differences(X))
    for r in range(len(diffs) + 1):
        for fam in itertools.combinations(diffs, r):
            u = 0
            for d in fam:
                u |= d
            if u == target:
                return True
    return False


@lru_cache(maxsize=None)
def pointed_spectrum(A: MeetSemilatticeView) -> PointedGenSpace:
    """Optimal filters plus ``A`` itself, by inclusion; ``X0`` the prime filters."""
    _require_distributive(A)
    whole = A.base.order.full
    carrier = list(_optimal_ms(A)) + [whole]
    n = len(carrier)
    up = tuple(to_mask(j for j in range(n) if carrier[i] & ~carrier[j] == 0) for i in range(n))
    phi = [to_mask(i for i in range(n) if carrier[i] >> a & 1) for a in A.elements]
    full = (1 << n) - 1
    opens = generate_topology(n, phi + [full & ~p for p in phi])
    primes = set(_prime_ms(A))
    x0 = to_mask(i for i, F in enumerate(carrier) if F in primes)
    names = tuple("{" + ",".join(map(str, bits(F))) + "}" for F in carrier)
    return PointedGenSpace(FinPoset(n, up, names), x0, n - 1, opens, tuple(carrier))


def spectrum_phi(A: MeetSemilatticeView, X: PointedGenSpace, a: int) -> int:
    return to_mask(i for i, F in enumerate(X.labels) if F >> a & 1)


# generalized morphisms -------------------------------------------------------

@dataclass(frozen=True)
class GenRelation:
    dom: PointedGenSpace
    cod: PointedGenSpace
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((int(x), int(y)) for x, y in self.pairs))
        for x, y in self.pairs:
            if not (0 <= x < self.dom.size and 0 <= y < self.cod.size):
                raise StructureError(f"pair {(x, y)} out of range", "pairs")

    @cached_property
    def image_masks(self) -> tuple[int, ...]:
        rows = [0] * self.dom.size
        for x, y in self.pairs:
            rows[x] |= 1 << y
        return tuple(rows)

    def image(self, x: int) -> int:
        return self.image_masks[x]

    def as_json(self) -> dict:
        return {"kind": "relation", "pairs": sorted(map(list, self.pairs))}


def box_r(R: GenRelation, U: int) -> int:
    return to_mask(x for x in range(R.dom.size) if R.image(x) & ~U == 0)


def gp_failure(R: GenRelation):
    Y = R.cod
    for x in range(R.dom.size):
        Rx = R.image(x)
        for y in range(Y.size):
            if Rx >> y & 1:
                continue
            if not any(Rx & ~U == 0 and not U >> y & 1 for U in Y.admissibles):
                return ("separation", x, y)
    for U in Y.admissibles:
        if not R.dom.is_admissible(box_r(R, U)):
            return ("box", U)
    return None


def is_gp_morphism(R: GenRelation) -> bool:
    return gp_failure(R) is None


def ge_failure(R: GenRelation):
    w = gp_failure(R)
    if w is not None:
        return w
    X, Y = R.dom, R.cod
    for x, y in sorted(R.pairs):
        if not Y.x0 >> y & 1:
            continue
        target = Y.poset.up[y]
        if not any(R.image(z) == target for z in bits(X.x0 & X.poset.up[x])):
            return ("witness", x, y)
    return None


def is_ge_morphism(R: GenRelation) -> bool:
    return ge_failure(R) is None


def order_relation(X: PointedGenSpace) -> GenRelation:
    """The identity morphism: ``x R y`` iff ``x <= y``."""
    return GenRelation(X, X, frozenset(X.poset.pairs()))


def compose_star(S: GenRelation, R: GenRelation) -> GenRelation:
    """``R`` first, then ``S``."""
    if R.cod != S.dom:
        raise StructureError("relations are not composable")
    Z = S.cod
    boxes = [(U, box_r(R, box_r(S, U))) for U in Z.admissibles]
    pairs = []
    for x in range(R.dom.size):
        need = Z.full
        for U, B in boxes:
            if B >> x & 1:
                need &= U
        pairs.extend((x, z) for z in bits(need))
    return GenRelation(R.dom, Z, frozenset(pairs))


def relational_composite(S: GenRelation, R: GenRelation) -> tuple[GenRelation, str]:
    """Plain relational composition; diagnostic only, it is not the categorical composite."""
    pairs = {(x, z) for x, y in R.pairs for (y2, z) in S.pairs if y == y2}
    return GenRelation(R.dom, S.cod, frozenset(pairs)), "warning: not the composite of the category"


@lru_cache(maxsize=65536)
def dual_relation(h: AlgHom) -> GenRelation:
    """``R_h`` between the spectra of ``B`` and ``A``: ``x R y`` iff ``h^-1(x) <= y``."""
    A, B = h.dom, h.cod
    XA = pointed_spectrum(MeetSemilatticeView(A))
    XB = pointed_spectrum(MeetSemilatticeView(B))
    pairs = []
    for i, x in enumerate(XB.labels):
        pre = to_mask(a for a in A.elements if x >> h(a) & 1)
        pairs.extend((i, j) for j, y in enumerate(XA.labels) if pre & ~y == 0)
    return GenRelation(XB, XA, frozenset(pairs))


def functoriality_failure(h: AlgHom, g: AlgHom):
    """For ``h: A -> B`` and ``g: B -> C``: ``R_h * R_g = R_(g.h)`` and boxes compose."""
    Rh, Rg = dual_relation(h), dual_relation(g)
    star = compose_star(Rh, Rg)
    direct = dual_relation(g.compose(h))
    if star.pairs != direct.pairs:
        return ("composite", sorted(star.pairs ^ direct.pairs)[:3])
    for U in Rh.cod.admissibles:
        if box_r(star, U) != box_r(Rg, box_r(Rh, U)):
            return ("box", sorted(bits(U)))
    return None


# homomorphism classes ---------------------------------------------------------

def dms_p_failure(h: AlgHom):
    A, B = h.dom, h.cod
    if h(A.bottom) != B.bottom:
        return ("empty join",)
    for a in A.elements:
        for b in A.elements:
            if h(A.join[a][b]) != B.join[h(a)][h(b)]:
                return ("join", a, b)
    primes_a = set(_prime_ms(MeetSemilatticeView(A)))
    for P in _prime_ms(MeetSemilatticeView(B)):
        pre = to_mask(a for a in A.elements if P >> h(a) & 1)
        if pre not in primes_a:
            return ("prime preimage", sorted(bits(P)))
    return None


def is_dms_p(h: AlgHom) -> bool:
    return al.is_ms_hom(h) and dms_p_failure(h) is None


def _map_preimage(f: PosetMap, U: int) -> int:
    return f.preimage_mask(U)


def pgps_p_failure(f: PosetMap, X: PointedGenSpace, Y: PointedGenSpace):
    for i, j in X.poset.pairs():
        if not Y.poset.leq(f(i), f(j)):
            return ("order", i, j)
    for U in Y.opens:
        if _map_preimage(f, U) not in X.opens:
            return ("continuity", U)
    for U in Y.admissibles:
        if not X.is_admissible(_map_preimage(f, U)):
            return ("admissible preimage", U)
    for x in bits(X.x0):
        if not Y.x0 >> f(x) & 1:
            return ("X0", x)
    return None


def is_pgps_p_map(f: PosetMap, X: PointedGenSpace, Y: PointedGenSpace) -> bool:
    return pgps_p_failure(f, X, Y) is None


def is_pges_p_map(f: PosetMap, X: PointedGenSpace, Y: PointedGenSpace) -> bool:
    if not is_pgps_p_map(f, X, Y):
        return False
    for x in range(X.size):
        for y in bits(Y.x0):
            if Y.poset.leq(f(x), y):
                if not any(f(z) == y for z in bits(X.x0 & X.poset.up[x])):
                    return False
    return True


def is_pes_p_map(f: PosetMap, m: int, n: int) -> bool:
    """Esakia morphism of finite pointed spaces with ``f^-1(n) = {m}``."""
    P, Q = f.dom, f.cod
    if P.down[m] != P.full or Q.down[n] != Q.full:
        return False
    if not po.is_p_morphism(f):
        return False
    return f.preimage_mask(1 << n) == 1 << m


# filter frames ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FilterFrame:
    base: MeetSemilatticeView
    filters: tuple[int, ...]
    lattice: FinLattice

    def index(self, F: int) -> int:
        return self.filters.index(F)


@lru_cache(maxsize=None)
def filter_frame(A: MeetSemilatticeView) -> FilterFrame:
    fs = tuple(sorted(ms_filter_masks(A), key=_popkey))
    return FilterFrame(A, fs, al.inclusion_lattice(fs))


def f_of_hom(h: AlgHom) -> AlgHom:
    """``F(h)(F) = up h[F]``."""
    FA = filter_frame(MeetSemilatticeView(h.dom))
    FB = filter_frame(MeetSemilatticeView(h.cod))
    up = h.cod.order.up_mask
    out = tuple(FB.index(up(to_mask(h(a) for a in bits(F)))) for F in FA.filters)
    return AlgHom(FA.lattice, FB.lattice, out)


def principal_filter_iso(A: MeetSemilatticeView) -> tuple[bool, tuple[int, ...]]:
    """``a -> up a`` into ``K(F(A))^d``; (is an order isomorphism, assignment)."""
    FF = filter_frame(A)
    view = du.FrameView(FF.lattice)
    K = view.compact_sublattice
    Kd = K.dual()
    target = [K.index_of(FF.index(A.principal_filter(a))) for a in A.elements]
    return al.is_isomorphism(A.base, Kd, target), tuple(target)


# pseudoprimes, primes, pseudopoints ------------------------------------------

def _nonempty_subsets(xs):
    xs = list(xs)
    for r in range(1, len(xs) + 1):
        yield from itertools.combinations(xs, r)


def pseudoprime_elements(L: FinLattice) -> list[int]:
    F = du.FrameView(L)
    out = []
    for p in L.elements:
        if p == L.top:
            continue
        if all(any(L.leq(a, p) for a in S) for S in _nonempty_subsets(L.elements) if F.way_below(L.meet_all(S), p)):
            out.append(p)
    return out


def prime_elements(L: FinLattice) -> list[int]:
    return [
        p
        for p in L.elements
        if p != L.top
        and all(L.leq(a, p) or L.leq(b, p) for a in L.elements for b in L.elements if L.leq(L.meet[a][b], p))
    ]


def pseudopoints(L: FinLattice) -> list[frozenset[int]]:
    """Nonempty upsets ``U`` that are inaccessible by joins and closed under way-below meets."""
    F = du.FrameView(L)
    out = []
    for U in po.upset_masks(L.order):
        if U == 0:
            continue
        # empty S: the join is bottom, so bottom must be outside U
        if any(U >> L.join_all(S) & 1 and not any(U >> s & 1 for s in S) for S in itertools.chain([()], _nonempty_subsets(L.elements))):
            continue
        members = list(bits(U))
        if any(
            F.way_below(L.meet_all(S), b) and not U >> b & 1
            for S in _nonempty_subsets(members)
            for b in L.elements
        ):
            continue
        out.append(to_set(U))
    return out


def y_space(L: FinLattice) -> PointedGenSpace:
    """Pseudoprimes plus top, with the subbasis of compact up- and co-upsets."""
    F = du.FrameView(L)
    pts = sorted(set(pseudoprime_elements(L)) | {L.top}, key=lambda p: (p == L.top, p))
    n = len(pts)
    up = tuple(to_mask(j for j in range(n) if L.leq(pts[i], pts[j])) for i in range(n))
    full = (1 << n) - 1
    sub = []
    for k in F.compact:
        s = to_mask(i for i, p in enumerate(pts) if L.leq(k, p))
        sub += [s, full & ~s]
    primes = set(prime_elements(L))
    x0 = to_mask(i for i, p in enumerate(pts) if p in primes)
    names = tuple(str(L.label(p)) for p in pts)
    return PointedGenSpace(FinPoset(n, up, names), x0, n - 1, generate_topology(n, sub), tuple(pts))


# Brouwerian frames -------------------------------------------------------------

def compact_dual_view(L: FinLattice) -> MeetSemilatticeView:
    """``K(L)^d`` as a meet-semilattice; labels are elements of ``L``."""
    K = du.FrameView(L).compact_sublattice
    return MeetSemilatticeView(K.dual())


def is_brouwerian_frame(L: FinLattice) -> bool:
    return al.is_brouwerian_semilattice(compact_dual_view(L))


def is_arithmetic(L: FinLattice) -> bool:
    K = du.FrameView(L).compact
    return all(L.meet[a][b] in K for a in K for b in K)


def _compact_implication(L: FinLattice, a: int, b: int) -> int | None:
    """``a -> b`` in ``K(L)^d`` for compact ``a, b``, as an element of ``L``."""
    V = compact_dual_view(L)
    K = V.base
    r = V.implication(K.index_of(a), K.index_of(b))
    return None if r is None else K.label(r)


def brwfrm_failure(alpha: AlgHom):
    """First obstruction to being a morphism of Brouwerian frames."""
    L, M = alpha.dom, alpha.cod
    w = al.hom_violation(alpha, "dl")
    if w is not None:
        return ("frame", w)
    KL = du.FrameView(L).compact
    for a in sorted(KL):
        for b in sorted(KL):
            lhs = _compact_implication(L, a, b)
            rhs = _compact_implication(M, alpha(a), alpha(b))
            if lhs is None or rhs is None or alpha(lhs) != rhs:
                return ("implication", a, b)
    return None


def is_brwfrm_morphism(alpha: AlgHom) -> bool:
    return brwfrm_failure(alpha) is None


def right_adjoint(alpha: AlgHom) -> AlgHom:
    """``r(b) = join {a : alpha(a) <= b}``; the adjunction is verified."""
    L, M = alpha.dom, alpha.cod
    r = tuple(L.join_all(a for a in L.elements if M.leq(alpha(a), b)) for b in M.elements)
    for a in L.elements:
        for b in M.elements:
            if M.leq(alpha(a), b) != L.leq(a, r[b]):
                raise AssertionError(f"adjunction fails at ({a}, {b}); map is not join preserving")
    return AlgHom(M, L, r)


def pp_in_p_failure(L: FinLattice):
    """Replays the arithmetic argument that pseudoprimes are prime; returns a failing step."""
    F = du.FrameView(L)
    K = F.compact
    for p in pseudoprime_elements(L):
        for a in L.elements:
            for b in L.elements:
                if L.leq(a, p) or L.leq(b, p):
                    continue
                ks = [k for k in K if L.leq(k, a) and not L.leq(k, p)]
                ls = [l for l in K if L.leq(l, b) and not L.leq(l, p)]
                if not ks or not ls:
                    return ("no compact approximant", p, a, b)
                k, l = min(ks), min(ls)
                if L.meet[k][l] not in K:
                    return ("not arithmetic", k, l)
                if L.leq(L.meet[a][b], p):
                    return ("meet below p", p, a, b)
    return None


# admissible closed upsets ------------------------------------------------------

def admissible_closed_upsets(X: PointedGenSpace) -> tuple[int, ...]:
    P = X.poset
    out = []
    for U in po.upset_masks(P):
        outside = X.full & ~U
        if outside in X.opens and outside & ~P.down_mask(X.x0 & outside) == 0:
            out.append(U)
    return tuple(out)


def va_frame(X: PointedGenSpace) -> FinLattice:
    """Admissible closed upsets under reverse inclusion."""
    return al.inclusion_lattice(admissible_closed_upsets(X)).dual()


# triangle -----------------------------------------------------------------------

def check_triangle_brw(A: MeetSemilatticeView) -> Report:
    r = Report()
    try:
        _require_distributive(A)
    except StructureError as e:
        r.add("distributive", False, str(e))
        return r
    r.add("optimal=prime", _optimal_ms(A) == _prime_ms(A), {"optimal": len(_optimal_ms(A)), "prime": len(_prime_ms(A))})
    X = pointed_spectrum(A)
    rep = pgps_report(X)
    r.extend(rep, prefix="X(A).")
    brw = al.is_brouwerian_semilattice(A)
    r.add("pges<->brouwerian", validate_pges(X) == brw, {"pges": validate_pges(X), "brouwerian": brw})

    # X(A) and Y(F(A)) carry the same filters
    FF = filter_frame(A)
    Y = y_space(FF.lattice)
    y_filters = tuple(FF.filters[p] for p in Y.labels)
    same = (
        y_filters == X.labels
        and Y.poset == X.poset
        and Y.x0 == X.x0
        and Y.m == X.m
        and Y.opens == X.opens
    )
    r.add("X(A)~Y(F(A))", same, None if same else {"X": list(X.labels), "Y": list(y_filters)})

    # A(X(A)) and A via phi
    phi = [spectrum_phi(A, X, a) for a in A.elements]
    adm = X.admissibles
    bij = sorted(phi) == sorted(adm) and len(set(phi)) == A.size
    order_ok = all(A.leq(a, b) == (phi[a] & ~phi[b] == 0) for a in A.elements for b in A.elements)
    meet_ok = all(phi[A.meet(a, b)] == phi[a] & phi[b] for a in A.elements for b in A.elements)
    imp_ok = True
    if brw:
        for a in A.elements:
            for b in A.elements:
                c = A.implication(a, b)
                if admissible_implication(X, phi[a], phi[b]) != phi[c]:
                    imp_ok = False
    r.add("A(X(A))~A", bij and order_ok and meet_ok and imp_ok, [sorted(bits(p)) for p in phi])

    ok, assign = principal_filter_iso(A)
    r.add("K(F(A))^d~A", ok, list(assign))

    va = admissible_closed_upsets(X)
    V = va_frame(X)
    r.add("Va(X)-is-frame", al.is_distributive(V), None)
    r.add("K(Va(X))^d=A(X)", sorted(va) == sorted(adm) and du.FrameView(V).compact == frozenset(V.elements), None)
    return r


def views_up_to(max_size: int) -> list[MeetSemilatticeView]:
    """Distributive meet-semilattice views of all lattices with at most ``max_size`` elements."""
    out = []
    for n in range(1, max_size + 1):
        for L in al.enumerate_lattices(n):
            V = MeetSemilatticeView(L)
            if al.is_distributive_ms(V):
                out.append(V)
    return out
