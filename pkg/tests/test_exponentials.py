import itertools

import networkx as nx
import pytest
from hypothesis import given

from conftest import spaces
from finconv import exponentials as ex
from finconv import spaces as sp
from finconv.groups import cyclic_group

S = sp.sierpinski()  # 0 -> 1


def brute_force_maps(X, Y):
    out = []
    for images in itertools.product(Y.points, repeat=X.n):
        f = sp.SpaceMap(X, Y, images)
        if all(Y.conv(f(a), f(x)) for a, x in X.edges()):
            out.append(images)
    return sorted(out, key=lambda im: tuple(Y.index(v) for v in im))


def test_sierpinski_self_maps():
    ms = ex.exponential(S, S)
    assert [m.images for m in ms.maps] == [(0, 0), (0, 1), (1, 1)]


def test_point_exponent_and_target():
    Y = sp.chain("abc", transitive=False)
    assert len(ex.continuous_maps(sp.point(), Y)) == Y.n
    assert len(ex.continuous_maps(Y, sp.point())) == 1
    assert sp.is_isomorphic(ex.exponential(sp.point(), Y).structure, Y)
    empty = sp.discrete(())
    assert ex.exponential(empty, Y).structure.n == 1


def test_sierpinski_exponential_is_three_chain():
    E = ex.exponential(S, S).structure
    assert E.is_topological
    assert E == sp.chain([ex.MapPoint((0, 0)), ex.MapPoint((0, 1)), ex.MapPoint((1, 1))])


@given(spaces(prefix="x"), spaces(prefix="y"))
def test_enumeration_matches_brute_force(X, Y):
    assert [m.images for m in ex.continuous_maps(X, Y)] == brute_force_maps(X, Y)


@given(spaces(prefix="x", max_points=3), spaces(prefix="y", max_points=3))
def test_edge_rule_matches_filter_oracle(X, Y):
    ms = ex.exponential(X, Y)
    for g in ms.maps:
        for f in ms.maps:
            assert ex.exp_edge(g, f) == ex.exp_edge_via_filters(ms, g, f)


def test_evaluation_examples():
    ev = ex.evaluation_map(S, S)
    assert ev((ex.MapPoint((0, 1)), 0)) == 0
    assert ev((ex.MapPoint((1, 1)), 0)) == 1
    assert sp.is_continuous(ev)


@given(spaces(prefix="x"), spaces(prefix="y"))
def test_evaluation_is_continuous(X, Y):
    assert sp.is_continuous(ex.evaluation_map(X, Y))


def test_exponential_law_frozen_count():
    # independently fixed by brute force before the main build: 6 on both sides
    SS = sp.product([S, S])
    assert len(brute_force_maps(SS, S)) == 6
    assert len(ex.continuous_maps(SS, S)) == 6
    assert len(ex.continuous_maps(S, ex.exponential(S, S).structure)) == 6


def test_curry_constant():
    Z, X, Y = sp.chain("ab"), S, sp.chain("uv", transitive=False)
    h = sp.SpaceMap(sp.product([Z, X]), Y, ("v",) * (Z.n * X.n))
    k = ex.curry(h, Z, X)
    assert set(k.images) == {ex.MapPoint(("v", "v"))}


def test_uncurry_curry_ev_is_ev():
    ms = ex.exponential(S, S)
    ev = ex.evaluation_map(S, S, ms)
    assert ex.uncurry(ex.curry(ev, ms.structure, S, ms), ms) == ev


def test_curry_rejects_discontinuous():
    h = sp.SpaceMap(sp.product([S, S]), S, (1, 0, 0, 0))
    with pytest.raises(sp.SpaceError):
        ex.curry(h, S, S)


@given(spaces(prefix="z", max_points=3), spaces(prefix="x", max_points=2), spaces(prefix="y", max_points=3))
def test_exponential_law_bijection(Z, X, Y):
    ms = ex.exponential(X, Y)
    lhs = ex.continuous_maps(sp.product([Z, X]), Y)
    rhs = ex.continuous_maps(Z, ms.structure)
    assert sorted(ex.curry(h, Z, X, ms).images for h in lhs) == sorted(k.images for k in rhs)


@given(spaces(prefix="x", topological=True), spaces(prefix="y", topological=True))
def test_exponential_of_topologies_is_topological(X, Y):
    assert ex.exponential(X, Y).structure.is_topological


@given(spaces(prefix="x", max_points=2), spaces(prefix="y", max_points=2), spaces(prefix="z", max_points=2))
def test_exponential_preserves_products(X, Y, Z):
    assert ex.exp_product_iso(X, Y, Z)


def test_pointed_map_space_examples():
    ms = ex.pointed_map_space(sp.PointedSpace(S, 0), sp.PointedSpace(S, 0))
    assert [m.images for m in ms.maps] == [(0, 0), (0, 1)]
    assert ms.structure.conv(ex.MapPoint((0, 0)), ex.MapPoint((0, 1)))
    P = sp.PointedSpace(sp.point(), "*")
    assert len(ex.pointed_map_space(sp.PointedSpace(S, 1), P).maps) == 1
    assert len(ex.pointed_map_space(P, sp.PointedSpace(S, 1)).maps) == 1


def test_homotopy_examples():
    const0, ident = sp.SpaceMap(S, S, (0, 0)), sp.identity(S)
    assert ex.are_homotopic(ident, ident)
    assert ex.are_homotopic(const0, ident, (0, 0))
    D = sp.discrete("uv")
    f, g = sp.SpaceMap(S, D, ("u", "u")), sp.SpaceMap(S, D, ("v", "v"))
    assert not ex.are_homotopic(f, g)


@given(spaces(prefix="x", max_points=3), spaces(prefix="y", max_points=3))
def test_homotopy_is_weak_component_of_full_map_space(X, Y):
    ms = ex.exponential(X, Y)
    g = nx.DiGraph()
    g.add_nodes_from(ms.structure.points)
    g.add_edges_from(ms.structure.edges())
    comp = {p: k for k, c in enumerate(nx.weakly_connected_components(g)) for p in c}
    maps = ms.maps[:6]
    for f, h in itertools.product(maps, maps):
        expected = comp[ms.label_of(f)] == comp[ms.label_of(h)]
        assert ex.are_homotopic(f, h) == expected


@given(spaces(prefix="x", max_points=3), spaces(prefix="y", max_points=3))
def test_pointed_homotopy_matches_pointed_map_space(X, Y):
    x0, y0 = X.points[0], Y.points[0]
    ms = ex.pointed_map_space(sp.PointedSpace(X, x0), sp.PointedSpace(Y, y0))
    labels = ex.weak_component_labels(ms.structure)
    for i, j in itertools.product(range(min(len(ms.maps), 5)), repeat=2):
        assert ex.are_homotopic(ms.maps[i], ms.maps[j], (x0, y0)) == (labels[i] == labels[j])


def test_homotopy_search_limit():
    X = sp.discrete(range(6))
    Y = sp.chain(range(4), transitive=False)
    f, g = sp.constant(X, Y, 0), sp.constant(X, Y, 3)
    with pytest.raises(ex.HomotopySearchLimit):
        ex.are_homotopic(f, g, max_maps=10)
    assert ex.are_homotopic(f, g)


def test_h_group_examples():
    P = sp.point()
    m = sp.SpaceMap(sp.product([P, P]), P, ("*",))
    assert ex.is_h_group(sp.PointedSpace(P, "*"), m, sp.identity(P)).ok
    for space in (sp.discrete((0, 1)), sp.indiscrete((0, 1))):
        G = cyclic_group(2, space)
        assert ex.is_h_group(sp.PointedSpace(space, 0), G.mult_map, G.inv_map).ok


def test_h_group_on_indiscrete_carrier_of_s3():
    from finconv.groups import symmetric_group_3
    G = symmetric_group_3(sp.indiscrete(range(6)))
    assert ex.is_h_group(sp.PointedSpace(G.space, G.unit), G.mult_map, G.inv_map).ok


def test_h_group_detects_failed_unit():
    # a multiplication that ignores its left argument cannot have a right unit
    D = sp.discrete((0, 1))
    wedge = sp.SpaceMap(sp.product([D, D]), D, tuple(b for a, b in sp.product([D, D]).points))
    report = ex.is_h_group(sp.PointedSpace(D, 0), wedge, sp.identity(D))
    assert report.left_unit and not report.right_unit and not report.ok
