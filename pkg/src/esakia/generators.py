"""Seeded random fan spaces and fan maps for fuzzing the classifier."""

from __future__ import annotations

import random
from functools import lru_cache

from . import poset as po
from .fan import FanSpace, Tail, validate
from .morphisms import Const, Embed, FanMap
from .poset import bits


@lru_cache(maxsize=None)
def _posets(n: int) -> tuple:
    return tuple(po.enumerate_posets(n))


def random_fan_space(rng: random.Random, max_skeleton: int = 3, max_tails: int = 2) -> FanSpace:
    n = rng.randint(1, max_skeleton)
    P = rng.choice(_posets(n))
    limits = 0
    for i in range(n):
        if rng.random() < 0.5:
            limits |= 1 << i
    tails = []
    lims = list(bits(limits))
    if lims:
        for _ in range(rng.randint(0, max_tails)):
            l = rng.choice(lims)
            # below must sit above the limit for the order to be closed
            ups = [u for u in po.upset_masks(P) if u & ~P.up[l] == 0]
            excluded = frozenset(k for k in range(3) if rng.random() < 0.15)
            tails.append(Tail(l, rng.choice(ups), excluded))
    return FanSpace(P, limits, tuple(tails))


def esakia_pool(seed: int, size: int = 24, **kw) -> list[FanSpace]:
    """``size`` distinct random spaces that validate as Esakia."""
    rng = random.Random(seed)
    out: list[FanSpace] = []
    seen = set()
    while len(out) < size:
        X = random_fan_space(rng, **kw)
        if X in seen:
            continue
        seen.add(X)
        if validate(X).esakia:
            out.append(X)
    return out


def _random_point(rng: random.Random, Y: FanSpace, tail_bias: float = 0.2):
    if Y.tails and rng.random() < tail_bias:
        s = rng.randrange(len(Y.tails))
        return Y.generic(s, rng.randint(0, 3))
    return rng.randrange(Y.n_skeleton)


def random_fan_map(rng: random.Random, X: FanSpace, Y: FanSpace, monotone_tries: int = 12) -> FanMap:
    """A continuous map ``X -> Y``; the skeleton part is order preserving when a quick search finds one."""
    named = None
    for _ in range(monotone_tries):
        cand = [_random_point(rng, Y) for _ in range(X.n_skeleton)]
        if all(Y.leq(cand[i], cand[j]) for i, j in X.skeleton.pairs()):
            named = cand
            break
    if named is None:
        named = cand
    rules = []
    overrides = {}
    for t, tail in enumerate(X.tails):
        target = named[tail.limit]
        options = [s for s, ct in enumerate(Y.tails) if ct.limit == target] if isinstance(target, int) else []
        if options and rng.random() < 0.7:
            s = rng.choice(options)
            rule = Embed(s, rng.choice((1, 1, 2)), rng.randint(0, 2))
            for e in Y.tails[s].excluded:
                n, r = divmod(e - rule.b, rule.a)
                if r == 0 and n >= 0 and n not in tail.excluded:
                    overrides[(t, n)] = target
        else:
            rule = Const(target)
        rules.append(rule)
        if rng.random() < 0.2:
            k = X.generic(t, rng.randint(0, 3))
            overrides.setdefault(k, _random_point(rng, Y))
    return FanMap(X, Y, tuple(named), tuple(rules), overrides)


def random_maps(seed: int, count: int, pool_size: int = 24):
    """Yield ``count`` seeded maps between members of a random Esakia pool."""
    rng = random.Random(seed)
    pool = esakia_pool(seed, pool_size)
    for _ in range(count):
        X, Y = rng.choice(pool), rng.choice(pool)
        yield random_fan_map(rng, X, Y)
