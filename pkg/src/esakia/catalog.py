"""Bundled spaces and maps with their known classification.

``x1``: the two-element chain ``x < y``.
``x2``: two discrete copies of the naturals (evens ``E`` and odds ``O``),
each compactified by its own limit.
``x3``: the naturals with a single limit, order trivial.
``x4``: the naturals with a limit on top of every natural.
``ne``: a limit ``inf`` with one tail and an extra point ``p0 > inf``
(tail index 0 moved into the skeleton); Priestley but not Esakia.
"""

from __future__ import annotations

from .fan import FanSpace, Tail
from .morphisms import Const, Embed, FanMap
from .poset import FinPoset

INF = "inf"


def x1() -> FanSpace:
    return FanSpace(FinPoset.from_pairs(2, [(0, 1)], names=("x", "y")), 0, ())


def x2() -> FanSpace:
    skel = FinPoset(2, (1, 2), ("inf_E", "inf_O"))
    return FanSpace(skel, 0b11, (Tail(0, 0, name="E"), Tail(1, 0, name="O")))


def x3() -> FanSpace:
    return FanSpace(FinPoset(1, (1,), (INF,)), 1, (Tail(0, 0, name="N"),))


def x4() -> FanSpace:
    return FanSpace(FinPoset(1, (1,), (INF,)), 1, (Tail(0, 1, name="N"),))


def ne() -> FanSpace:
    skel = FinPoset(2, (0b11, 0b10), (INF, "p0"))
    return FanSpace(skel, 1, (Tail(0, 0, frozenset({0}), name="N"),))


def point() -> FanSpace:
    return FanSpace(FinPoset(1, (1,), ("*",)), 0, ())


def collapse() -> FanMap:
    """x, y both to x."""
    X = x1()
    return FanMap(X, X, (0, 0))


def interleave() -> FanMap:
    """Evens to ``2n``, odds to ``2n+1``, both limits to ``inf``."""
    return FanMap(x2(), x3(), (0, 0), (Embed(0, 2, 0), Embed(0, 2, 1)))


def start_and_limit() -> FanMap:
    """x to the natural 0, y to ``inf``."""
    return FanMap(x1(), x4(), ((0, 0), 0))


def point_to_limit() -> FanMap:
    return FanMap(point(), x4(), (0,))


def broken_limit() -> FanMap:
    """Tail sent to the constant 0 while its limit goes to ``inf``: not continuous."""
    X = x4()
    return FanMap(X, X, (0,), (Const((0, 0)),))


SPACES = {"x1": x1, "x2": x2, "x3": x3, "x4": x4, "ne": ne, "point": point}
MAPS = {
    "collapse": collapse,
    "interleave": interleave,
    "start_and_limit": start_and_limit,
    "point_to_limit": point_to_limit,
}

# Expected flags; a missing entry is not constrained by the source examples.
GOLDEN = {
    "collapse": {"es_minus": True, "es": False, "es_plus": False, "es_star": True, "es_dagger": False},
    "interleave": {"es_minus": True, "es": True, "es_plus": False, "es_dagger": False},
    "start_and_limit": {"es_minus": True, "es": True, "es_plus": True, "es_star": False, "es_dagger": False},
    "point_to_limit": {"es_plus": True, "spectral_open": False},
}

EXPECTED_SPACES = {
    "x2": (True, True),
    "x3": (True, True),
    "x4": (True, True),
    "x1": (True, True),
    "ne": (True, False),
}


def finite_structures() -> dict:
    """Small algebras, a pointed spectrum and its order relation."""
    from . import algebra as al
    from . import brouwerian as brw

    c2 = al.lattice_from_poset(FinPoset.chain(2))
    c3 = al.lattice_from_poset(FinPoset.chain(3))
    d2 = al.lattice_from_poset(FinPoset.from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)], names=("0", "a", "b", "1")))
    one = al.lattice_from_poset(FinPoset.chain(1))
    spec = brw.pointed_spectrum(al.MeetSemilatticeView(c3))
    return {
        "c2": c2,
        "c3": c3,
        "d2": d2,
        "one": one,
        "hom_d2_c2": al.AlgHom(d2, c2, (0, 1, 0, 1)),
        "hom_c3_c2": al.AlgHom(c3, c2, (0, 0, 1)),  # lattice hom, not Heyting
        "spectrum_c3": spec,
        "order_spectrum_c3": brw.order_relation(spec),
    }


def bundled() -> dict:
    """Everything shipped under ``data/``, keyed by file stem."""
    out = {k: f() for k, f in SPACES.items()}
    out.update({k: f() for k, f in MAPS.items()})
    out["broken_limit"] = broken_limit()
    out.update(finite_structures())
    return out
