import pytest

from esakia import algebra as al
from esakia import catalog
from esakia import duality as du
from esakia import poset as po
from esakia.poset import FinPoset, to_mask

import oracles

S = catalog.finite_structures()


def test_prime_filters_of_the_square_form_an_antichain():
    X = du.prime_filters(S["d2"])
    assert X.size == 2
    assert X.poset.covers() == []


def test_one_element_lattice_has_no_prime_filters():
    assert du.prime_filters(S["one"]).size == 0


def test_ideals_of_a_two_chain():
    J = du.ideal_frame(S["c2"]).lattice
    assert J.size == 2


@pytest.mark.parametrize("A", al.distributive_lattices_up_to(8), ids=repr)
def test_prime_filters_against_join_scan(A):
    assert sorted(du.prime_filters(A).masks) == sorted(oracles.prime_filters_by_joins(A))


@pytest.mark.parametrize("A", al.distributive_lattices_up_to(8), ids=repr)
def test_ideals_against_subset_scan(A):
    assert sorted(map(to_mask, oracles.ideals(A))) == sorted(du.ideal_masks(A))


@pytest.mark.parametrize("P", po.posets_up_to(3), ids=lambda P: str(P.covers()))
def test_clopup_implication_is_the_residual(P):
    A = du.clopup(P)
    for U in A.labels:
        for V in A.labels:
            W = du.clopup_implication(P, U, V)
            assert W == oracles.residual(A, U, V, A.labels)


def test_stone_map_of_the_square():
    A = S["d2"]
    assert du.stone_map(A, A.bottom) == frozenset()
    assert len(du.stone_map(A, A.top)) == 2


@pytest.mark.parametrize("P", po.posets_up_to(4), ids=lambda P: str(P.covers()))
def test_space_unit_is_an_isomorphism(P):
    assert du.is_poset_iso(du.space_unit(P))


def test_finite_frame_everything_is_compact():
    L = du.FrameView(S["d2"])
    assert L.compact == frozenset(L.base.elements)
    assert all(L.way_below(a, b) == L.base.leq(a, b) for a in L.base.elements for b in L.base.elements)


@pytest.mark.parametrize("A", al.distributive_lattices_up_to(6), ids=repr)
def test_finite_distributive_lattices_are_heyting_frames(A):
    assert du.heyting_frame_routes(du.FrameView(A)) == (True, True)


def test_triangle_on_the_square_with_its_homs():
    A = S["d2"]
    homs = list(al.dl_homs(A, S["c2"])) + list(al.dl_homs(A, A))
    r = du.check_triangle_dl(A, homs)
    assert r.ok, r.render()


def test_non_distributive_input_reports_a_witness():
    M3 = al.lattice_from_poset(FinPoset.from_pairs(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))
    r = du.check_triangle_dl(M3)
    assert not r.ok
    assert r.checks[0].witness is not None


def test_dual_of_hom_sends_prime_filters_to_preimages():
    h = S["hom_d2_c2"]
    f = du.dual_of_hom(h)
    assert f.dom.size == 1 and f.cod.size == 2
    assert po.is_order_preserving(f)
