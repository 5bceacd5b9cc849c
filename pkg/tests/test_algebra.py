import pytest

from esakia import algebra as al
from esakia import catalog
from esakia import poset as po
from esakia.algebra import AlgHom, MeetSemilatticeView
from esakia.errors import NotALattice
from esakia.poset import FinPoset

import oracles

S = catalog.finite_structures()


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5), (6, 15)])
def test_lattice_counts(n, count):
    assert len(list(al.enumerate_lattices(n))) == count


def test_distributive_counts_by_size():
    sizes = [L.size for L in al.distributive_lattices_up_to(8)]
    assert [sizes.count(n) for n in range(1, 9)] == [1, 1, 1, 2, 3, 5, 8, 15]


@pytest.mark.parametrize("n", range(1, 7))
def test_distributive_enumeration_agrees_with_downset_lattices(n):
    by_enum = sum(1 for _ in al.enumerate_lattices(n, distributive_only=True))
    by_downsets = sum(1 for L in al.distributive_lattices_up_to(n) if L.size == n)
    assert by_enum == by_downsets


def test_pentagon_is_not_distributive():
    N5 = al.lattice_from_poset(FinPoset.from_pairs(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]))
    assert al.distributivity_violation(N5) is not None
    assert not al.is_heyting_algebra(N5)


def test_not_a_lattice_carries_a_witness():
    with pytest.raises(NotALattice) as e:
        al.lattice_from_poset(FinPoset.from_pairs(4, [(0, 2), (0, 3), (1, 2), (1, 3)]))
    assert e.value.witness is None or len(e.value.witness) == 2


@pytest.mark.parametrize("L", al.distributive_lattices_up_to(6), ids=repr)
def test_implication_table_against_scan(L):
    for a in L.elements:
        for b in L.elements:
            assert L.implies(a, b) == oracles.residual_element(L, a, b)


def test_lattice_hom_that_is_not_heyting():
    h = S["hom_c3_c2"]
    assert al.is_dl_hom(h)
    assert not al.is_ha_hom(h)
    assert al.hom_violation(h, "ha")[0] == "imp"


def test_heyting_hom_out_of_the_square():
    h = S["hom_d2_c2"]
    assert al.is_ha_hom(h)


SMALL = [L for L in al.distributive_lattices_up_to(5)] + [L for n in (5,) for L in al.enumerate_lattices(n)]


@pytest.mark.parametrize("A", al.distributive_lattices_up_to(4), ids=repr)
def test_dl_homs_are_all_lattice_homs(A):
    for B in al.distributive_lattices_up_to(4):
        got = sorted(h.assignment for h in al.dl_homs(A, B))
        assert got == sorted(oracles.hom_maps(A, B))


@pytest.mark.parametrize("A", al.distributive_lattices_up_to(4), ids=repr)
def test_ms_homs_are_all_meet_homs(A):
    for B in al.distributive_lattices_up_to(4):
        got = sorted(h.assignment for h in al.ms_homs(A, B))
        assert got == sorted(oracles.hom_maps(A, B, ("meet", "top")))


def test_meet_semilattice_view_hides_join():
    V = MeetSemilatticeView(S["d2"])
    assert V.top == 3
    assert V.implication(1, 0) == 2
    assert al.is_brouwerian_semilattice(V)


def test_compose_and_identity():
    h = S["hom_d2_c2"]
    i = al.identity_hom(h.cod)
    assert i.compose(h) == h
    assert h.compose(al.identity_hom(h.dom)) == h


def test_downset_lattice_of_antichain_is_boolean():
    B = al.downset_lattice(FinPoset.antichain(2))
    assert B.size == 4
    assert po.is_isomorphic(B.order, S["d2"].order)
