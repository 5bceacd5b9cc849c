"""Independent re-evaluation of failure witnesses.

Nothing here uses the set algebra of :mod:`fan`: membership is decided
point by point from the order, the map and ``p in D``.  Tail behaviour at
infinity is read off one far index past everything the inputs mention,
which is exact because every definable set and every normal-form map is
eventually constant along a tail.
"""

from __future__ import annotations

from .fan import DefinableSet, FanSpace, Point
from .morphisms import Const, Embed, FanMap, Witness, normalize


def _far(*xs: int) -> int:
    return max(xs) + 7


def _horizon(f: FanMap, *sets: DefinableSet) -> int:
    idx = [f.dom.bound, f.cod.bound] + [n for (_, n), _ in f.overrides]
    idx += [r.b for r in f.tails if isinstance(r, Embed)]
    idx += [q[1] for q in f.named if isinstance(q, tuple)]
    idx += [D.max_index() for D in sets]
    return _far(*idx)


def _points(X: FanSpace, far: int) -> list[Point]:
    pts: list[Point] = list(range(X.n_skeleton))
    for t, tail in enumerate(X.tails):
        pts.extend((t, n) for n in range(far + 1) if n not in tail.excluded)
    return pts


def _above(X: FanSpace, p: Point) -> list[Point]:
    """Every point ``>= p``: a tail point sits below only skeleton points."""
    if isinstance(p, tuple):
        return [p] + [s for s in range(X.n_skeleton) if X.tails[p[0]].below >> s & 1]
    return [s for s in range(X.n_skeleton) if X.skeleton.leq(p, s)]


def _in_closure(X: FanSpace, member, far: int, z: Point) -> bool:
    if member(z):
        return True
    if isinstance(z, tuple):
        return False
    return any(t.limit == z and member(X.generic(k, far)) for k, t in enumerate(X.tails))


def _down_closure_member(X: FanSpace, member, far: int, x: Point, closed: bool) -> bool:
    if closed:
        return any(_in_closure(X, member, far, z) for z in _above(X, x))
    return any(member(z) for z in _above(X, x))


def _set_condition_fails(g: FanMap, E: DefinableSet, closed: bool) -> Point | None:
    """A domain point where ``g^-1(down cl E)`` and ``down cl g^-1(E)`` disagree."""
    far = _horizon(g, E)
    X, Y = g.dom, g.cod

    def in_e(q):
        return q in E

    def in_pre(p):
        return g(p) in E

    for x in _points(X, far):
        lhs = _down_closure_member(Y, in_e, far + far, g(x), closed)
        rhs = _down_closure_member(X, in_pre, far, x, closed)
        if lhs != rhs:
            return x
    return None


def _limit_of_tail(f: FanMap, t: int):
    rule = f.tails[t]
    if isinstance(rule, Const):
        return rule.point
    return f.cod.tails[rule.tail].limit


def es_minus_fails(f: FanMap) -> bool:
    X, Y = f.dom, f.cod
    for t, tail in enumerate(X.tails):
        if f(tail.limit) != _limit_of_tail(f, t):
            return True
    far = _horizon(f)
    pts = _points(X, far)
    return any(X.leq(p, q) and not Y.leq(f(p), f(q)) for p in pts for q in _above(X, p))


def confirms(f: FanMap, flag: str, w: Witness, verdict_witnesses: dict | None = None) -> bool:
    """True when the witness for a failed ``flag`` still fails on re-evaluation."""
    if flag == "es_minus":
        return es_minus_fails(f)
    if flag == "es_dagger":
        others = verdict_witnesses or {}
        return any(k in others and confirms(f, k, others[k]) for k in ("es_plus", "es_star"))
    g = normalize(f).map
    if not isinstance(w.subject, DefinableSet):
        return False
    return _set_condition_fails(g, w.subject, closed=flag != "es") is not None


def downset_of(X: FanSpace, D: DefinableSet):
    """Membership predicate of the down-closure, by search over points above."""
    return lambda p: any(z in D for z in _above(X, p))


def downset_not_clopen(X: FanSpace, C: DefinableSet) -> bool:
    far = _far(X.bound, C.max_index())
    member = downset_of(X, C)
    return any(member(t.limit) != member(X.generic(k, far)) for k, t in enumerate(X.tails))
