import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finconv.filters import (
    UNDEFINED,
    FilterError,
    FiniteFilter,
    SetMap,
    all_filters,
    filter_from_core,
    filter_product,
    principal,
    pullback,
    pushforward,
)


def subsets(carrier):
    for r in range(len(carrier) + 1):
        for c in itertools.combinations(carrier, r):
            yield frozenset(c)


def members_by_definition(F):
    return {S for S in subsets(F.carrier) if F.core <= S}


F3 = (0, 1, 2)
AB = ("a", "b")
f_collapse = SetMap.from_mapping(F3, AB, {0: "a", 1: "a", 2: "b"})


def test_principal_has_singleton_core():
    F = filter_from_core(F3, {0})
    assert F.is_ultrafilter and F == principal(F3, 0)


def test_whole_carrier_core_is_trivial_filter():
    F = filter_from_core(F3, F3)
    assert not F.is_ultrafilter
    assert set(F.members()) == {frozenset(F3)}


def test_empty_core_rejected():
    with pytest.raises(FilterError):
        FiniteFilter((0, 1), frozenset())


def test_core_outside_carrier_rejected():
    with pytest.raises(FilterError):
        filter_from_core((0, 1), {2})


def test_members_match_superset_definition():
    for F in all_filters(F3):
        assert set(F.members()) == members_by_definition(F)


def test_filter_count_is_nonempty_subsets():
    assert sum(1 for _ in all_filters(range(4))) == 15


def test_pushforward_identity():
    ident = SetMap.from_mapping((0, 1), (0, 1), {0: 0, 1: 1})
    F = filter_from_core((0, 1), {0})
    assert pushforward(ident, F) == F


def test_pushforward_collapse():
    F = filter_from_core(F3, {0, 1})
    assert pushforward(f_collapse, F) == filter_from_core(AB, {"a"})


def test_pushforward_constant_is_principal():
    const = SetMap.from_mapping(F3, AB, lambda _: "b")
    for F in all_filters(F3):
        assert pushforward(const, F) == principal(AB, "b")


def test_pushforward_by_definition():
    # f_*F = {S : f^-1(S) in F}, enumerated over all subsets of the codomain
    for F in all_filters(F3):
        expected = {S for S in subsets(AB) if f_collapse.preimage(S) in F}
        assert set(pushforward(f_collapse, F).members()) == expected


def test_pullback_examples():
    assert pullback(f_collapse, filter_from_core(AB, {"a"})) == filter_from_core(F3, {0, 1})
    assert pullback(f_collapse, filter_from_core(AB, AB)) == filter_from_core(F3, F3)
    g = SetMap.from_mapping((0,), AB, {0: "a"})
    assert pullback(g, principal(AB, "b")) is UNDEFINED
    assert not UNDEFINED


def test_product_examples():
    assert filter_product(principal((0,), 0), principal(AB, "a")) == principal(((0, "a"), (0, "b")), (0, "a"))
    P = filter_product(filter_from_core((0, 1), {0}), filter_from_core(AB, AB))
    assert P.core == {(0, "a"), (0, "b")}
    T = filter_product(filter_from_core((0, 1), (0, 1)), filter_from_core(AB, AB))
    assert T.core == set(T.carrier)


def test_product_members_by_definition():
    # generated by rectangles A × B with A in F, B in G
    F, G = filter_from_core((0, 1), {0, 1}), filter_from_core(AB, {"b"})
    P = filter_product(F, G)
    rects = [frozenset(itertools.product(A, B)) for A in F.members() for B in G.members()]
    expected = {S for S in subsets(P.carrier) if any(r <= S for r in rects)}
    assert set(P.members()) == expected


@st.composite
def set_maps(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 3))
    images = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    return SetMap(tuple(range(n)), tuple(range(m)), tuple(images))


@given(set_maps(), st.data())
def test_pullback_lemma(f, data):
    core = data.draw(st.sets(st.sampled_from(f.codomain), min_size=1))
    F = filter_from_core(f.codomain, core)
    pb = pullback(f, F)
    if not core & set(f.images):
        assert pb is UNDEFINED
        return
    back = pushforward(f, pb)
    assert back.refines(F)
    if F.is_ultrafilter:
        assert back == F


@given(set_maps(), st.data())
def test_ultrafilters_map_to_ultrafilters(f, data):
    x = data.draw(st.sampled_from(f.domain))
    assert pushforward(f, principal(f.domain, x)) == principal(f.codomain, f(x))


def test_refines_is_core_inclusion():
    for F in all_filters(F3):
        for G in all_filters(F3):
            assert F.refines(G) == (set(G.members()) <= set(F.members()))
