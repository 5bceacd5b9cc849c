import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from esakia import catalog
from esakia import fan
from esakia import poset as po
from esakia.errors import StructureError
from esakia.fan import FanSpace, Tail, Trace
from esakia.generators import random_fan_space
from esakia.poset import FinPoset

X1, X2, X3, X4, NE = catalog.x1(), catalog.x2(), catalog.x3(), catalog.x4(), catalog.ne()
SPACES = [X1, X2, X3, X4, NE] + [random_fan_space(random.Random(s)) for s in range(12)]


def definable(X: FanSpace):
    idx = st.frozensets(st.integers(0, 6), max_size=3)
    traces = st.tuples(*[st.builds(Trace, st.booleans(), idx) for _ in X.tails])
    return st.builds(fan.DefinableSet, st.just(X), st.integers(0, X.skeleton.full), traces)


space_and_sets = st.sampled_from(SPACES).flatmap(lambda X: st.tuples(st.just(X), definable(X), definable(X)))


def pts(X):
    return fan.sample_points(X, extra=10)


def above(X, p):
    return [q for q in pts(X) if X.leq(p, q)]


def in_closure(X, D, p):
    if p in D:
        return True
    # a limit is in the closure when infinitely many tail points are; index 50 is past every exception
    return not isinstance(p, tuple) and any(t.limit == p and X.generic(k, 50) in D for k, t in enumerate(X.tails))


@given(space_and_sets)
def test_boolean_operations_pointwise(args):
    X, D, E = args
    for p in pts(X):
        assert (p in D | E) == (p in D or p in E)
        assert (p in D & E) == (p in D and p in E)
        assert (p in D - E) == (p in D and p not in E)
        assert (p in fan.complement(D)) == (p not in D)


@given(space_and_sets)
def test_order_and_topology_pointwise(args):
    X, D, _ = args
    dn, up, cl = fan.down_closure(D), fan.up_closure(D), fan.closure(D)
    for p in pts(X):
        assert (p in dn) == any(q in D for q in above(X, p))
        assert (p in up) == any(q in D for q in pts(X) if X.leq(q, p))
        assert (p in cl) == in_closure(X, D, p)
    assert fan.interior(D) == fan.complement(fan.closure(fan.complement(D)))


@given(space_and_sets)
def test_subset_agrees_with_membership(args):
    X, D, E = args
    assert (D <= E) == all(p not in D or p in E for p in pts(X) + [X.generic(k, 50) for k in range(len(X.tails))])


@given(space_and_sets)
def test_complement_is_an_involution(args):
    _, D, _ = args
    assert fan.complement(fan.complement(D)) == D
    assert D | D.space.empty() == D


def test_evens_and_odds_cover_the_naturals():
    E = X2.make([], [(True, ()), (False, ())])
    O = X2.make([], [(False, ()), (True, ())])
    U = E | O
    assert U.named == 0 and all(tr.cofinite for tr in U.tails)


def test_down_closures():
    assert fan.down_closure(X4.points_set([0])) == X4.whole()
    D = X3.make([], [(True, {2})])
    assert fan.down_closure(D) == D
    assert fan.down_closure(NE.points_set([1])) == NE.points_set([0, 1])


def test_closures():
    N = X3.make([], [(True, ())])
    assert fan.closure(N) == X3.whole()
    assert fan.closure(X3.empty()) == X3.empty()
    E = X2.make([], [(True, ()), (False, ())])
    assert fan.closure(E) == X2.make([0], [(True, ()), (False, ())])


def test_openness():
    assert not fan.is_open(X4.points_set([0]))
    assert fan.is_clopen(X4.whole()) and fan.is_upset_def(X4.whole())
    assert fan.is_clopen(X2.make([0], [(True, ()), (False, ())]))


def test_box():
    assert fan.box(X4.whole()) == X4.whole()
    assert fan.box(X4.make([], [(True, ())])) == X4.empty()
    assert fan.box(X1.points_set([1])) == X1.points_set([1])


def test_open_upset_implication():
    U = X4.whole()
    assert fan.open_upset_implication(U, U) == U
    V = X4.make([0], [(True, {0})])
    assert fan.open_upset_implication(U, V) == V


@pytest.mark.parametrize("X", [X2, X3])
def test_implication_on_trivial_order(X):
    cu = fan.clopen_upset_basis(X, fan.fresh_indices(0, 1))
    for U in cu[:8]:
        for V in cu[:8]:
            assert fan.open_upset_implication(U, V) == fan.complement(fan.closure(U - V))


@pytest.mark.parametrize("name, expected", sorted(catalog.EXPECTED_SPACES.items()))
def test_catalog_space_verdicts(name, expected):
    v = fan.validate(catalog.SPACES[name]())
    assert (v.priestley, v.esakia) == expected
    assert v.routes_agree


def test_non_esakia_certificates_name_the_same_downset():
    C = fan.esakia_failure_by_downsets(NE)
    U, V = fan.esakia_failure_by_implication(NE)
    assert fan.down_closure(C) == fan.spectral_closure(U - V) == NE.points_set([0, 1])
    assert not fan.is_open(fan.down_closure(C))


@pytest.mark.parametrize("P", po.posets_up_to(3), ids=lambda P: str(P.covers()))
def test_embedded_finite_posets_are_esakia(P):
    v = fan.validate(fan.embed_finite_poset(P))
    assert v.priestley and v.esakia


def test_empty_space():
    X = fan.embed_finite_poset(FinPoset(0, ()))
    assert X.whole() == X.empty()


def test_validation_paths():
    P = FinPoset.chain(2)
    with pytest.raises(StructureError, match=r"tails\[0\]\.limit"):
        FanSpace(P, 0b01, (Tail(1, 0),))
    with pytest.raises(StructureError, match=r"tails\[0\]\.below"):
        FanSpace(P, 0b01, (Tail(0, 0b01),))


@given(st.integers(0, 400))
def test_random_spaces_are_priestley(seed):
    X = random_fan_space(random.Random(seed))
    assert fan.validate(X).priestley


@given(st.integers(0, 400))
def test_esakia_routes_agree_on_random_spaces(seed):
    X = random_fan_space(random.Random(seed))
    v = fan.validate(X)
    assert v.routes_agree


@given(st.integers(0, 200))
def test_basis_depth_does_not_change_space_verdicts(seed):
    X = random_fan_space(random.Random(seed))
    assert fan.validate(X, 1) == fan.validate(X, 2)
