import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from conftest import spaces
from finconv import spaces as sp
from finconv.filters import all_filters, filter_from_core, principal

chain_ab = sp.chain(["a", "b"])
disjoint_chains = sp.PseudoSpace.from_edges("abcd", [("a", "b"), ("c", "d")])
chains_q = {"a": 1, "b": 2, "c": 2, "d": 3}


def relation_to_nx(space):
    g = nx.DiGraph()
    g.add_nodes_from(space.points)
    g.add_edges_from(space.edges())
    return g


def test_diagonal_is_forced():
    s = sp.PseudoSpace((0, 1), np.zeros((2, 2), dtype=bool))
    assert s == sp.discrete((0, 1))
    assert not s.adj.flags.writeable


def test_convergence_examples():
    X = sp.sierpinski()
    for x in X.points:
        assert sp.converges(X, principal(X.points, x), x)
    ind = sp.indiscrete(range(3))
    assert all(sp.converges(ind, F, x) for F in all_filters(ind.points) for x in ind.points)
    assert sp.converges(chain_ab, filter_from_core("ab", "ab"), "b")
    assert not sp.converges(chain_ab, filter_from_core("ab", "ab"), "a")


def test_filter_convergence_is_all_ultrafilters():
    # F -> x iff every ultrafilter above F converges to x
    X = sp.chain([0, 1, 2], transitive=False)
    for F in all_filters(X.points):
        for x in X.points:
            assert sp.converges(X, F, x) == all(X.conv(a, x) for a in F.core)


def test_continuity_examples():
    assert sp.is_continuous(sp.identity(disjoint_chains))
    assert sp.is_continuous(sp.constant(chain_ab, sp.point(), "*"))
    f = sp.SpaceMap.from_mapping(chain_ab, sp.discrete((0, 1)), {"a": 0, "b": 1})
    assert not sp.is_continuous(f)
    assert not sp.is_continuous_at(f, "b") and sp.is_continuous_at(f, "a")


@given(spaces(prefix="x"), spaces(prefix="y"), spaces(max_points=3))
def test_continuity_matches_filter_definition(X, Y, _):
    # image of every convergent ultrafilter converges to the image point
    for images in itertools.islice(itertools.product(range(Y.n), repeat=X.n), 40):
        f = sp.SpaceMap.from_indices(X, Y, images)
        expected = all(Y.conv(f(a), f(x)) for a in X.points for x in X.points if X.conv(a, x))
        assert sp.is_continuous(f) == expected


def test_initial_examples():
    assert sp.initial_structure((0, 1), []) == sp.indiscrete((0, 1))
    X = sp.chain("abc")
    S = ("b", "c")
    assert sp.initial_structure(S, [({p: p for p in S}, X)]) == sp.subspace(X, S)
    P = sp.product([chain_ab, chain_ab])
    init = sp.initial_structure(P.points, [(lambda p: p[0], chain_ab), (lambda p: p[1], chain_ab)])
    assert init == P and P.conv(("a", "a"), ("b", "b"))


def test_final_examples():
    assert sp.final_structure((0, 1), []) == sp.discrete((0, 1))
    assert sp.final_structure(("*",), [(chain_ab, lambda _: "*")]) == sp.point()
    Q = sp.final_structure((1, 2, 3), [(disjoint_chains, chains_q)])
    assert Q.edges() == [(1, 2), (2, 3)]
    assert not Q.is_topological
    assert sp.quotient(disjoint_chains, chains_q) == Q


def test_product_with_point_is_isomorphic():
    X = sp.chain("abc", transitive=False)
    assert sp.is_isomorphic(sp.product([X, sp.point()]), X)


def test_subspace_of_chain():
    assert sp.subspace(sp.chain("abc"), "bc") == sp.chain("bc")


def test_coproduct_is_disjoint_union():
    C = sp.coproduct([chain_ab, sp.point()])
    assert C.points == ((0, "a"), (0, "b"), (1, "*"))
    assert C.edges() == [((0, "a"), (0, "b"))]


@given(spaces(prefix="x"), spaces(prefix="y"))
def test_projections_continuous_and_product_is_initial(X, Y):
    P = sp.product([X, Y])
    p0, p1 = sp.projection(P, X, 0), sp.projection(P, Y, 1)
    assert sp.is_continuous(p0) and sp.is_continuous(p1)
    assert sp.initial_structure(P.points, [(p0, X), (p1, Y)]) == P


def test_reflect_examples():
    D = sp.discrete("abc")
    assert sp.reflect_top(D) == D
    I = sp.indiscrete("abc")
    assert sp.reflect_top(I) == I
    N = sp.chain("abc", transitive=False)
    R = sp.reflect_top(N)
    assert R.conv("a", "c")
    assert set(sp.open_sets(R)) == {frozenset(), frozenset("a"), frozenset("ab"), frozenset("abc")}


@given(spaces(max_points=5))
def test_reflect_matches_networkx_closure(X):
    tc = nx.transitive_closure(relation_to_nx(X), reflexive=True)
    assert set(sp.reflect_top(X).edges(diagonal=True)) == set(tc.edges())


@given(spaces(max_points=5))
def test_epi_reflection_is_topological_reflection(X):
    assert sp.reflect_epi(X) == sp.reflect_top(X)
    assert sp.is_epitopological(X) == X.is_topological


def test_epi_to_top_requires_topology():
    with pytest.raises(sp.SpaceError):
        sp.reflect_epi_to_top(sp.chain("abc", transitive=False))


@given(spaces(max_points=4))
def test_open_sets_by_definition(X):
    # U is open in RX iff every filter converging (in RX) into U contains U
    R = sp.reflect_top(X)
    for r in range(X.n + 1):
        for U in itertools.combinations(X.points, r):
            U = frozenset(U)
            by_filters = all(U in F for F in all_filters(X.points) for x in U if sp.converges(R, F, x))
            assert sp.is_open(X, U) == by_filters


@given(spaces(max_points=4, topological=True))
def test_space_from_opens_inverts_open_sets(X):
    assert sp.space_from_opens(X.points, sp.open_sets(X)) == X


@given(spaces(max_points=4))
def test_minimal_open_is_intersection_of_neighbourhoods(X):
    opens = sp.open_sets(X)
    for x in X.points:
        nbhds = [U for U in opens if x in U]
        assert sp.minimal_open(X, x) == frozenset.intersection(*nbhds)


def test_lattice_examples():
    X = sp.chain("ab", transitive=False)
    assert sp.lattice_meet([X, sp.discrete("ab")]) == sp.discrete("ab")
    assert sp.lattice_join([X, sp.indiscrete("ab")]) == sp.indiscrete("ab")
    ba = sp.PseudoSpace.from_edges("ab", [("b", "a")])
    assert sp.lattice_meet([X, ba]) == sp.discrete("ab")


def test_quotient_map_examples():
    assert sp.is_quotient_map(sp.identity(disjoint_chains))
    f = sp.SpaceMap.from_mapping(chain_ab, sp.discrete("ab"), {"a": "a", "b": "b"})
    assert not sp.is_quotient_map(f)
    Q = sp.quotient(disjoint_chains, chains_q)
    assert sp.is_quotient_map(sp.SpaceMap.from_mapping(disjoint_chains, Q, chains_q))


def test_quotient_rejects_non_surjection():
    with pytest.raises(sp.SpaceError):
        sp.quotient(chain_ab, {"a": 0, "b": 0}, (0, 1))


@given(spaces(prefix="x"), spaces(prefix="y"), spaces(prefix="z"))
def test_composition_of_continuous_maps(X, Y, Z):
    from finconv.exponentials import continuous_maps
    fs, gs = continuous_maps(X, Y)[:5], continuous_maps(Y, Z)[:5]
    for f in fs:
        for g in gs:
            assert sp.is_continuous(sp.compose(g, f))


def test_dot_export_marks_nontransitive_edges():
    dot = sp.to_dot(sp.chain("abc", transitive=False), "N")
    assert '"a" -> "b" [style=dashed' in dot
    assert '"a" -> "a"' not in dot
    solid = sp.to_dot(sp.chain("abc"), "C")
    assert "dashed" not in solid


@given(spaces(max_points=4), spaces(max_points=4))
def test_isomorphism_agrees_with_networkx(X, Y):
    expected = nx.is_isomorphic(relation_to_nx(X), relation_to_nx(Y))
    assert sp.is_isomorphic(X, Y) == expected
