"""Finite posets on the carrier ``0..size-1``.

The order is stored as one bitmask per element: bit ``j`` of ``up[i]`` is
set iff ``i <= j``.  Subsets handed to and returned from the public
functions are ``frozenset`` s of indices; the ``*_mask`` helpers work on
integer bitmasks and are what the heavier modules call in their loops.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import BoundExceeded, OrderError

MAX_ENUMERATION_SIZE = 7
MAX_UPSET_SIZE = 20

Subset = frozenset


def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def to_mask(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << i
    return m


def to_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


@dataclass(frozen=True)
class FinPoset:
    """A finite partial order.

    Build with :meth:`from_pairs` (reflexive-transitive closure of
    generating pairs) or directly from upset masks, which are validated.
    ``names`` is display-only and ignored by equality and hashing.
    """

    size: int
    up: tuple[int, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)
    down: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.up) != self.size:
            raise OrderError(f"expected {self.size} rows, got {len(self.up)}")
        full = (1 << self.size) - 1
        down = [0] * self.size
        for i, row in enumerate(self.up):
            if row & ~full:
                raise OrderError(f"row {i} mentions an index out of range")
            if not row >> i & 1:
                raise OrderError(f"not reflexive at {i}")
            for j in bits(row):
                down[j] |= 1 << i
                if j != i and self.up[j] >> i & 1:
                    raise OrderError(f"antisymmetry fails for ({i}, {j})")
                if self.up[j] & ~row:
                    raise OrderError(f"transitivity fails at ({i}, {j})")
        if self.names is not None and len(self.names) != self.size:
            raise OrderError("names must label every element")
        object.__setattr__(self, "down", tuple(down))

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]], names=None) -> FinPoset:
        up = [1 << i for i in range(size)]
        for i, j in pairs:
            if not (0 <= i < size and 0 <= j < size):
                raise OrderError(f"pair ({i}, {j}) out of range")
            up[i] |= 1 << j
        changed = True
        while changed:
            changed = False
            for i in range(size):
                row = up[i]
                for j in bits(row):
                    row |= up[j]
                if row != up[i]:
                    up[i] = row
                    changed = True
        return cls(size, tuple(up), tuple(names) if names is not None else None)

    @classmethod
    def chain(cls, n: int) -> FinPoset:
        return cls.from_pairs(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n: int) -> FinPoset:
        return cls.from_pairs(n, [])

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in bits(self.up[i])]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(i, j)`` with ``i`` covered by ``j``."""
        out = []
        for i in range(self.size):
            strict = self.up[i] & ~(1 << i)
            for j in bits(strict):
                if not any(k != j and self.up[k] >> j & 1 for k in bits(strict)):
                    out.append((i, j))
        return out

    def lower_covers(self, j: int) -> list[int]:
        return [i for i, k in self.covers() if k == j]

    def up_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def down_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def dual(self) -> FinPoset:
        return FinPoset(self.size, self.down, self.names)

    def relabel(self, perm: list[int]) -> FinPoset:
        """Poset whose element ``perm[i]`` plays the role of old ``i``."""
        up = [0] * self.size
        for i in range(self.size):
            up[perm[i]] = to_mask(perm[j] for j in bits(self.up[i]))
        return FinPoset(self.size, tuple(up))

    def name(self, i: int) -> str:
        return self.names[i] if self.names else str(i)


@dataclass(frozen=True)
class PosetMap:
    dom: FinPoset
    cod: FinPoset
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.dom.size:
            raise OrderError("assignment must be total on the domain")
        for v in self.assignment:
            if not 0 <= v < self.cod.size:
                raise OrderError(f"image {v} out of range")

    def __call__(self, i: int) -> int:
        return self.assignment[i]

    def preimage_mask(self, mask: int) -> int:
        return to_mask(i for i, v in enumerate(self.assignment) if mask >> v & 1)


def _check(P: FinPoset, S: Iterable[int]) -> int:
    m = to_mask(S)
    if m & ~P.full:
        raise IndexError(f"subset {sorted(to_set(m))} not within 0..{P.size - 1}")
    return m


def up_set(P: FinPoset, S: Iterable[int]) -> frozenset[int]:
    return to_set(P.up_mask(_check(P, S)))


def down_set(P: FinPoset, S: Iterable[int]) -> frozenset[int]:
    return to_set(P.down_mask(_check(P, S)))


def is_upset(P: FinPoset, S: Iterable[int]) -> bool:
    m = _check(P, S)
    return P.up_mask(m) == m


def is_downset(P: FinPoset, S: Iterable[int]) -> bool:
    m = _check(P, S)
    return P.down_mask(m) == m


def upset_masks(P: FinPoset, bound: int = MAX_UPSET_SIZE) -> list[int]:
    """All upsets as masks, sorted by (cardinality, mask)."""
    if P.size > bound:
        raise BoundExceeded(f"poset of size {P.size} exceeds upset bound {bound}")
    # an upset is determined by its antichain of minimal elements; grow by
    # adding maximal-first so each upset is produced from a unique parent
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for i in range(P.size):
                if u >> i & 1:
                    continue
                if (P.up[i] & ~(1 << i)) & ~u:
                    continue
                v = u | 1 << i
                if v not in found:
                    found.add(v)
                    nxt.append(v)
        frontier = nxt
    return sorted(found, key=lambda m: (bin(m).count("1"), m))


def downset_masks(P: FinPoset, bound: int = MAX_UPSET_SIZE) -> list[int]:
    return upset_masks(P.dual(), bound)


def all_upsets(P: FinPoset, bound: int = MAX_UPSET_SIZE) -> list[frozenset[int]]:
    return [to_set(m) for m in upset_masks(P, bound)]


def all_downsets(P: FinPoset, bound: int = MAX_UPSET_SIZE) -> list[frozenset[int]]:
    return [to_set(m) for m in downset_masks(P, bound)]


def is_order_preserving(f: PosetMap) -> bool:
    return order_violation(f) is None


def order_violation(f: PosetMap) -> tuple[int, int] | None:
    for i, j in f.dom.pairs():
        if not f.cod.leq(f(i), f(j)):
            return (i, j)
    return None


def p_morphism_violation(f: PosetMap) -> int | None:
    """A point ``y`` of the codomain where ``down f^-1(y) != f^-1(down y)``."""
    for y in range(f.cod.size):
        lhs = f.dom.down_mask(f.preimage_mask(1 << y))
        rhs = f.preimage_mask(f.cod.down[y])
        if lhs != rhs:
            return y
    return None


def is_p_morphism(f: PosetMap) -> bool:
    return p_morphism_violation(f) is None


def join_irreducibles(P: FinPoset) -> frozenset[int]:
    lower = [0] * P.size
    for i, j in P.covers():
        lower[j] += 1
    return frozenset(j for j in range(P.size) if lower[j] == 1)


# canonical forms ------------------------------------------------------------

def _refine(P: FinPoset, colors: list[int]) -> list[int]:
    while True:
        sig = []
        for i in range(P.size):
            below = sorted(colors[j] for j in bits(P.down[i] & ~(1 << i)))
            above = sorted(colors[j] for j in bits(P.up[i] & ~(1 << i)))
            sig.append((colors[i], tuple(below), tuple(above)))
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _code(P: FinPoset, order: list[int]) -> tuple[int, ...]:
    pos = {v: k for k, v in enumerate(order)}
    return tuple(to_mask(pos[j] for j in bits(P.up[v])) for v in order)


def canonical_labeling(P: FinPoset) -> tuple[tuple[int, ...], list[int]]:
    """Return ``(code, order)``: ``order[k]`` is the element placed at ``k``.

    Individualize-and-refine: colour classes are refined by the multisets of
    colours strictly below and above each element; ties are broken by
    branching on every member of the first non-singleton class.  The code
    is the minimum over all leaves, so isomorphic posets get equal codes.
    """
    best: list = [None, None]

    def search(colors):
        colors = _refine(P, colors)
        classes: dict[int, list[int]] = {}
        for i, c in enumerate(colors):
            classes.setdefault(c, []).append(i)
        cell = next((classes[c] for c in sorted(classes) if len(classes[c]) > 1), None)
        if cell is None:
            order = sorted(range(P.size), key=lambda i: colors[i])
            code = _code(P, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        for v in cell:
            nxt = [2 * c + (1 if c == colors[v] and i != v else 0) for i, c in enumerate(colors)]
            search(nxt)

    search([0] * P.size)
    if P.size == 0:
        return (), []
    return best[0], best[1]


def canonical_form(P: FinPoset) -> FinPoset:
    _, order = canonical_labeling(P)
    perm = [0] * P.size
    for k, v in enumerate(order):
        perm[v] = k
    return P.relabel(perm)


def is_isomorphic(P: FinPoset, Q: FinPoset) -> bool:
    return P.size == Q.size and canonical_labeling(P)[0] == canonical_labeling(Q)[0]


def _extend(P: FinPoset, down_mask: int) -> FinPoset:
    """Add a new maximal element sitting exactly above ``down_mask``."""
    n = P.size
    up = [row | (1 << n if down_mask >> i & 1 else 0) for i, row in enumerate(P.up)]
    up.append(1 << n)
    return FinPoset(n + 1, tuple(up))


@lru_cache(maxsize=None)
def _posets_of_size(n: int) -> tuple[FinPoset, ...]:
    if n == 0:
        return (FinPoset(0, ()),)
    seen: dict[tuple[int, ...], FinPoset] = {}
    for P in _posets_of_size(n - 1):
        for d in downset_masks(P):
            Q = _extend(P, d)
            code = canonical_labeling(Q)[0]
            if code not in seen:
                seen[code] = canonical_form(Q)
    return tuple(seen[c] for c in sorted(seen))


def enumerate_posets(n: int, bound: int = MAX_ENUMERATION_SIZE) -> Iterator[FinPoset]:
    """One canonical representative per isomorphism class of ``n``-element posets.

    Every poset arises from a smaller one by adding a maximal element, so
    the classes are grown level by level and deduplicated by canonical code.
    """
    if n > bound:
        raise BoundExceeded(f"enumeration bound {bound} exceeded by n={n}")
    if n < 0:
        raise ValueError("n must be non-negative")
    yield from _posets_of_size(n)


def posets_up_to(n: int, bound: int = MAX_ENUMERATION_SIZE) -> list[FinPoset]:
    return [P for k in range(n + 1) for P in enumerate_posets(k, bound)]


def all_maps(P: FinPoset, Q: FinPoset) -> Iterator[PosetMap]:
    for a in itertools.product(range(Q.size), repeat=P.size):
        yield PosetMap(P, Q, a)


def order_preserving_maps(P: FinPoset, Q: FinPoset) -> Iterator[PosetMap]:
    """Backtracking over a linear extension of ``P``."""
    order = sorted(range(P.size), key=lambda i: bin(P.down[i]).count("1"))
    assign = [0] * P.size

    def go(k):
        if k == P.size:
            yield PosetMap(P, Q, tuple(assign))
            return
        v = order[k]
        placed = order[:k]
        for y in range(Q.size):
            if all(
                (not P.leq(u, v) or Q.leq(assign[u], y)) and (not P.leq(v, u) or Q.leq(y, assign[u]))
                for u in placed
            ):
                assign[v] = y
                yield from go(k + 1)

    yield from go(0)
