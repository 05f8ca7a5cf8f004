import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import spaces
from finconv import pasting as pa
from finconv import spaces as sp
from finconv.exponentials import random_continuous_map
from finconv.harness.instances import random_cover

S = sp.sierpinski("a", "b")
K = sp.chain("abc")
D01 = sp.discrete((0, 1))


def test_single_piece_is_all_open():
    c = pa.Cover(K, (K.points,))
    assert pa.classify_cover(c) is pa.CoverKind.ALL_OPEN
    assert all(c.closed_flags)


def test_sierpinski_singletons_are_mixed():
    c = pa.Cover(S, ({"a"}, {"b"}))
    assert c.open_flags == (True, False) and c.closed_flags == (False, True)
    assert pa.classify_cover(c) is pa.CoverKind.MIXED


def test_chain_cover_is_mixed():
    c = pa.Cover(K, ("ab", "bc"))
    assert c.open_flags == (True, False)
    assert c.closed_flags == (False, True)
    assert pa.classify_cover(c) is pa.CoverKind.MIXED


def test_cover_must_cover():
    with pytest.raises(sp.SpaceError):
        pa.Cover(K, ("ab",))
    with pytest.raises(sp.SpaceError):
        pa.Cover(K, ("abc", "z"))


def test_glue_examples():
    c = pa.Cover(K, ("ab", "bc"))
    f = pa.glue(c, [{"a": 0, "b": 0}, {"b": 0, "c": 0}], D01)
    assert f.images == (0, 0, 0)
    raw = pa.glue(pa.Cover(S, ({"a"}, {"b"})), [{"a": 0}, {"b": 1}], D01)
    assert not sp.is_continuous(raw)
    closed = pa.Cover(K, ("abc", "bc"))
    ident = pa.glue(closed, pa.pieces_of(closed, sp.identity(K)), K)
    assert ident == sp.identity(K)


def test_glue_disagreement_has_witness():
    with pytest.raises(pa.GlueError) as info:
        pa.glue(pa.Cover(K, ("ab", "bc")), [{"a": 0, "b": 0}, {"b": 1, "c": 1}], D01)
    assert info.value.witness == "b"


def test_closed_cover_identity_glues():
    c = pa.refine(pa.Cover(K, ("abc",)), ["bc", "c"])
    assert pa.classify_cover(c) is pa.CoverKind.ALL_CLOSED
    v = pa.check_pasting(c, pa.pieces_of(c, sp.identity(K)), K)
    assert v.pieces_continuous and v.glue_continuous and not v.violates_lemma


def test_closed_sets_of_chain_are_up_sets():
    c = pa.Cover(K, ("abc", "bc", "c"))
    assert c.closed_flags == (True, True, True)
    assert c.open_flags == (True, False, False)
    assert pa.classify_cover(c) is pa.CoverKind.ALL_CLOSED


def test_mixed_counterexample():
    c = pa.Cover(S, ({"a"}, {"b"}))
    v = pa.check_pasting(c, [{"a": 0}, {"b": 1}], D01)
    assert v.kind is pa.CoverKind.MIXED
    assert v.pieces_continuous and not v.glue_continuous
    assert not v.hypotheses_met and not v.violates_lemma
    assert v.as_dict()["glue_continuous"] is False


def test_piecewise_structure_characterizes_piecewise_continuity():
    c = pa.Cover(K, ("ab", "bc"))
    P = pa.piecewise_structure(c)
    for images in itertools.product(D01.points, repeat=3):
        f = sp.SpaceMap(K, D01, images)
        by_pieces = all(sp.is_continuous(sp.restrict(f, piece)) for piece in c.pieces)
        assert by_pieces == sp.is_continuous(sp.retarget(f, dom=P))


@given(spaces(max_points=5), spaces(prefix="y", max_points=4), st.sampled_from(["open", "closed"]),
       st.integers(0, 2**32 - 1))
def test_pasting_lemma(X, Y, kind, seed):
    rng = np.random.default_rng(seed)
    c = random_cover(rng, X, kind)
    assert pa.hypotheses_met(c)
    f = random_continuous_map(pa.piecewise_structure(c), Y, rng)
    v = pa.check_pasting(c, pa.pieces_of(c, sp.retarget(f, dom=X)), Y)
    assert v.pieces_continuous
    assert v.glue_continuous


@given(spaces(max_points=4))
def test_every_finite_cover_is_locally_finite(X):
    c = pa.Cover(X, (X.points,) + tuple({p} for p in X.points))
    assert c.locally_finite
