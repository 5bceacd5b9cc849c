import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from esakia import poset as po
from esakia.errors import OrderError
from esakia.poset import FinPoset, PosetMap

import oracles


def test_closure_of_generating_pairs():
    P = FinPoset.from_pairs(3, [(0, 1), (1, 2)])
    assert P.leq(0, 2)
    assert P.covers() == [(0, 1), (1, 2)]


def test_cycle_is_rejected():
    with pytest.raises(OrderError):
        FinPoset.from_pairs(2, [(0, 1), (1, 0)])


def test_out_of_range_pair():
    with pytest.raises(OrderError):
        FinPoset.from_pairs(2, [(0, 2)])


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_poset_counts(n, count):
    assert len(list(po.enumerate_posets(n))) == count


def test_enumeration_order_is_stable():
    a = [P.up for P in po.enumerate_posets(4)]
    b = [P.up for P in po.enumerate_posets(4)]
    assert a == b


def test_enumerated_posets_are_pairwise_non_isomorphic():
    Ps = list(po.enumerate_posets(4))
    for P, Q in itertools.combinations(Ps, 2):
        assert not po.is_isomorphic(P, Q)


@pytest.mark.parametrize("P", po.posets_up_to(4), ids=lambda P: str(P.covers()))
def test_upsets_match_subset_scan(P):
    le = oracles.leq_table(P)
    brute = sorted(S for S in oracles.subsets(P.size) if oracles.is_downset(le, (1 << P.size) - 1 & ~S))
    assert sorted(po.upset_masks(P)) == brute


@given(st.integers(0, 15), st.permutations(range(4)))
def test_canonical_form_ignores_labels(k, perm):
    P = list(po.enumerate_posets(4))[k]
    assert po.canonical_form(P.relabel(list(perm))) == po.canonical_form(P)


def test_join_irreducibles_of_a_chain():
    # the bottom is the empty join, so it is not irreducible
    assert po.join_irreducibles(FinPoset.chain(3)) == frozenset({1, 2})


@pytest.mark.parametrize("P", po.posets_up_to(3), ids=lambda P: str(P.covers()))
def test_p_morphism_against_definition(P):
    for Q in po.posets_up_to(3):
        for f in po.all_maps(P, Q):
            want = oracles.is_p_morphism(P, Q, f.assignment)
            assert po.is_p_morphism(f) == want, f.assignment


def test_order_violation_names_a_pair():
    C2 = FinPoset.chain(2)
    f = PosetMap(C2, C2, (1, 0))
    assert po.order_violation(f) == (0, 1)
