"""Brute-force reference implementations, written from the definitions only.

Nothing here calls the package's set algebra, closure operators or
classifier; inputs are plain posets, tables and maps.
"""

from __future__ import annotations

import itertools


def subsets(n: int):
    return range(1 << n)


def members(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def leq_table(P) -> list[list[bool]]:
    return [[bool(P.up[i] >> j & 1) for j in range(P.size)] for i in range(P.size)]


def is_downset(le, S: int) -> bool:
    n = len(le)
    return all(not (S >> j & 1) or all(S >> i & 1 for i in range(n) if le[i][j]) for j in range(n))


def down(le, S: int) -> int:
    n = len(le)
    return sum(1 << i for i in range(n) if any(S >> j & 1 and le[i][j] for j in range(n)))


def preimage(assign, S: int) -> int:
    return sum(1 << i for i, v in enumerate(assign) if S >> v & 1)


def finite_flags(P, Q, assign) -> dict:
    """Morphism flags of a map between finite posets (discrete topology), from the definitions.

    ES-: order preserving.  ES: f^-1(down y) = down f^-1(y) for every y.
    ES+: the same identity for every subset (all subsets are constructible).
    ES*: the identity for every downset.  Closure is the identity here.
    """
    lp, lq = leq_table(P), leq_table(Q)
    mono = all(lq[assign[i]][assign[j]] for i in range(P.size) for j in range(P.size) if lp[i][j])
    if not mono:
        return dict(es_minus=False, es=False, es_plus=False, es_star=False, es_dagger=False)

    def holds(E):
        return preimage(assign, down(lq, E)) == down(lp, preimage(assign, E))

    es = all(holds(1 << y) for y in range(Q.size))
    es_plus = all(holds(E) for E in subsets(Q.size))
    es_star = all(holds(D) for D in subsets(Q.size) if is_downset(lq, D))
    return dict(es_minus=True, es=es, es_plus=es_plus, es_star=es_star, es_dagger=es_plus and es_star)


def is_p_morphism(P, Q, assign) -> bool:
    lp, lq = leq_table(P), leq_table(Q)
    for x in range(P.size):
        for z in range(P.size):
            if lp[x][z] and not lq[assign[x]][assign[z]]:
                return False
        for y in range(Q.size):
            if lq[assign[x]][y] and not any(lp[x][z] and assign[z] == y for z in range(P.size)):
                return False
    return True


def ideals(A) -> list[frozenset[int]]:
    """Nonempty downsets closed under binary joins, by scanning every subset."""
    out = []
    n = A.size
    le = leq_table(A.order)
    for S in subsets(n):
        if not S or not is_downset(le, S):
            continue
        ms = members(S)
        if all(S >> A.join[a][b] & 1 for a in ms for b in ms):
            out.append(frozenset(ms))
    return out


def residual(A, I: frozenset, J: frozenset, family) -> frozenset | None:
    """Largest member K of ``family`` with K & I contained in J."""
    good = [K for K in family if K & I <= J]
    top = [K for K in good if all(G <= K for G in good)]
    return top[0] if top else None


def filters(A) -> list[int]:
    le = leq_table(A.order)
    n = A.size
    out = []
    for S in subsets(n):
        if not S:
            continue
        ms = members(S)
        up_closed = all(S >> j & 1 for i in ms for j in range(n) if le[i][j])
        if up_closed and all(S >> A.meet[a][b] & 1 for a in ms for b in ms):
            out.append(S)
    return out


def prime_filters_by_joins(A) -> list[int]:
    """Proper filters F with a v b in F forcing a in F or b in F."""
    full = (1 << A.size) - 1
    out = []
    for F in filters(A):
        if F == full:
            continue
        if all(F >> a & 1 or F >> b & 1 for a in range(A.size) for b in range(A.size) if F >> A.join[a][b] & 1):
            out.append(F)
    return out


def all_maps(m: int, n: int):
    return itertools.product(range(n), repeat=m)


def hom_maps(A, B, ops=("meet", "join", "bottom", "top")):
    """Every map preserving the listed operations, by scanning all maps."""
    for h in all_maps(A.size, B.size):
        if "top" in ops and h[A.top] != B.top:
            continue
        if "bottom" in ops and h[A.bottom] != B.bottom:
            continue
        ok = True
        for a in range(A.size):
            for b in range(A.size):
                if "meet" in ops and h[A.meet[a][b]] != B.meet[h[a]][h[b]]:
                    ok = False
                    break
                if "join" in ops and h[A.join[a][b]] != B.join[h[a]][h[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield h


def residual_element(A, a: int, b: int):
    """Greatest c with a & c <= b, by scanning."""
    cands = [c for c in range(A.size) if A.leq(A.meet[a][c], b)]
    top = [c for c in cands if all(A.leq(d, c) for d in cands)]
    return top[0] if top else None
