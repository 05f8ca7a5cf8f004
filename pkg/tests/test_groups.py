import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from finconv import groups as gr
from finconv import spaces as sp

SIERPINSKI_Z2 = gr.cyclic_group(2, sp.sierpinski())


def test_group_axioms_are_checked():
    D = sp.discrete((0, 1))
    with pytest.raises(gr.GroupError):
        gr.ConvergenceGroup.from_table(D, {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1})
    with pytest.raises(gr.GroupError):
        gr.ConvergenceGroup(D, 0, {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0}, {0: 0, 1: 0})


def test_small_groups_catalogue():
    names = [name for name, _ in gr.small_groups(6)]
    assert names == ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3"]
    S3 = gr.symmetric_group_3()
    assert any(S3.mult[a, b] != S3.mult[b, a] for a in range(6) for b in range(6))


@pytest.mark.parametrize("name,G", list(gr.small_groups(6)))
def test_discrete_and_indiscrete_structures(name, G):
    for space in (sp.discrete(G.space.points), sp.indiscrete(G.space.points)):
        H = G.with_space(space)
        assert gr.is_pstop_group(H) and gr.is_quasitop_group(H) and gr.is_top_group(H)


def test_sierpinski_z2():
    assert sp.is_continuous(SIERPINSKI_Z2.inv_map)
    assert not gr.is_pstop_group(SIERPINSKI_Z2)
    assert not sp.is_continuous(SIERPINSKI_Z2.left_translation(1))
    assert not gr.is_quasitop_group(SIERPINSKI_Z2)
    assert not gr.is_top_group(SIERPINSKI_Z2)


def all_structures(G):
    n = G.order
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for mask in range(1 << len(pairs)):
        adj = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                adj[i, j] = True
        yield G.with_space(sp.PseudoSpace(G.space.points, adj))


@pytest.mark.parametrize("G", [gr.cyclic_group(2), gr.cyclic_group(3)])
def test_remark_exhaustive_on_small_groups(G):
    for H in all_structures(G):
        lhs = gr.is_quasitop_group(H) and gr.is_pstop_group(H)
        assert lhs == gr.is_top_group(H)


@pytest.mark.parametrize("G", [gr.cyclic_group(2), gr.cyclic_group(3)])
def test_pstop_closure_is_least_compatible_structure(G):
    # oracle: among all structures containing adj, the compatible ones have a least element
    n = G.order
    structures = list(all_structures(G))
    for seed in range(6):
        adj = np.random.default_rng(seed).random((n, n)) < 0.3
        closure = gr.pstop_closure(G, adj)
        above = [H.space for H in structures if np.all(H.space.adj >= (adj | np.eye(n, dtype=bool)))
                 and gr.is_pstop_group(H)]
        assert closure in above
        assert all(np.all(closure.adj <= s.adj) for s in above)


@pytest.mark.parametrize("name,G", list(gr.small_groups(6)))
def test_compatible_structures_are_h_groups(name, G):
    rng = np.random.default_rng(len(name))
    for _ in range(15):
        adj = rng.random((G.order, G.order)) < rng.random() * 0.5
        H = G.with_space(gr.pstop_closure(G, adj))
        assert gr.is_pstop_group(H)
        assert gr.h_group_report(H).ok


@pytest.mark.parametrize("name,G", list(gr.small_groups(6)))
def test_compatible_structures_are_normal_coset_relations(name, G):
    # finite pseudotopological groups: x -> y iff x^-1 y lies in a normal subgroup
    rng = np.random.default_rng(7 + len(name))
    for _ in range(10):
        H = G.with_space(gr.pstop_closure(G, rng.random((G.order, G.order)) < 0.2))
        N = {y for y in H.space.points if H.space.conv(G.unit, y)}
        assert all(G.mult[a, b] in N for a in N for b in N)
        assert all(G.mult[G.mult[g, n], G.inv[g]] in N for g in G.space.points for n in N)
        for x, y in itertools.product(H.space.points, repeat=2):
            assert H.space.conv(x, y) == (G.mult[G.inv[x], y] in N)


def test_h_group_report_requires_pstop():
    with pytest.raises(sp.SpaceError):
        gr.h_group_report(SIERPINSKI_Z2)


@given(st.integers(1, 6), st.integers(0, 5))
def test_translations_are_bijections(n, g):
    G = gr.cyclic_group(n)
    g %= n
    assert sorted(G.left_translation(g).images) == list(range(n))
    assert sorted(G.right_translation(g).images) == list(range(n))
