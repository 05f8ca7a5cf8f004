"""Deterministic enumeration and random generation of finite instances."""
from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from ..exponentials import random_continuous_map
from ..pasting import Cover
from ..spaces import PseudoSpace, SpaceMap, reflect_top, transitive_closure

DEFAULT_BOUND = 5
DEFAULT_ISO_BOUND = 4


class BoundExceeded(ValueError):
    pass


def _off_diagonal(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _canonical_key(adj: np.ndarray) -> bytes:
    n = adj.shape[0]
    best = None
    for perm in itertools.permutations(range(n)):
        p = np.array(perm, dtype=np.intp)
        key = np.packbits(adj[np.ix_(p, p)]).tobytes()
        if best is None or key < best:
            best = key
    return best if best is not None else b""


def enumerate_spaces(n: int, kind: str = "all", up_to_iso: bool = False,
                     bound: int | None = None) -> Iterator[PseudoSpace]:
    """All reflexive relations on ``0..n-1`` in bitmask order.

    ``kind="topological"`` keeps the transitive ones; ``up_to_iso`` keeps the
    first representative of each isomorphism class.
    """
    if kind not in ("all", "topological"):
        raise ValueError(f"unknown filter {kind!r}")
    bound = (DEFAULT_ISO_BOUND if up_to_iso else DEFAULT_BOUND) if bound is None else bound
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the enumeration bound {bound}")
    pairs = _off_diagonal(n)
    rows = np.array([i for i, _ in pairs], dtype=np.intp)
    cols = np.array([j for _, j in pairs], dtype=np.intp)
    points = tuple(range(n))
    seen: set[bytes] = set()
    for mask in range(1 << len(pairs)):
        adj = np.eye(n, dtype=bool)
        if pairs:
            bits = (mask >> np.arange(len(pairs))) & 1
            adj[rows, cols] = bits.astype(bool)
        if kind == "topological":
            a = adj.astype(np.int64)
            if not np.all(((a @ a) > 0) <= adj):
                continue
        if up_to_iso:
            key = _canonical_key(adj)
            if key in seen:
                continue
            seen.add(key)
        yield PseudoSpace(points, adj)


def count_spaces(n: int, kind: str = "all", up_to_iso: bool = False) -> int:
    return sum(1 for _ in enumerate_spaces(n, kind, up_to_iso, bound=max(n, DEFAULT_BOUND)))


def all_functions(domain: tuple, codomain: tuple) -> Iterator[tuple]:
    """Image tuples of every function, lexicographic in codomain order."""
    return itertools.product(codomain, repeat=len(domain))


def surjections(domain: tuple, codomain: tuple) -> Iterator[tuple]:
    target = set(codomain)
    for images in all_functions(domain, codomain):
        if set(images) == target:
            yield images


# Random instances

def random_space(rng: np.random.Generator, max_points: int, min_points: int = 1,
                 topological: bool = False, labels=None) -> PseudoSpace:
    n = int(rng.integers(min_points, max_points + 1))
    density = rng.random()
    adj = rng.random((n, n)) < density
    if topological:
        adj = transitive_closure(adj | np.eye(n, dtype=bool))
    points = tuple(range(n)) if labels is None else tuple(labels[:n])
    return PseudoSpace(points, adj)


def random_function(rng: np.random.Generator, X: PseudoSpace, Y: PseudoSpace) -> SpaceMap:
    idx = rng.integers(0, Y.n, size=X.n)
    return SpaceMap.from_indices(X, Y, idx)


def random_surjection_images(rng: np.random.Generator, n: int, k: int) -> tuple:
    """Images in ``0..k-1`` hitting every value; requires ``k <= n``."""
    perm = rng.permutation(n)
    images = np.empty(n, dtype=np.intp)
    images[perm[:k]] = np.arange(k)
    if n > k:
        images[perm[k:]] = rng.integers(0, k, size=n - k)
    return tuple(int(v) for v in images)


def random_continuous(rng: np.random.Generator, X: PseudoSpace, Y: PseudoSpace) -> SpaceMap:
    f = random_continuous_map(X, Y, rng)
    assert f is not None  # constant maps always exist when Y is nonempty
    return f


def _closure_sets(space: PseudoSpace, upward: bool) -> list[frozenset]:
    """Minimal open (``upward=False``) or minimal closed sets of the reflection."""
    R = reflect_top(space).adj
    out = []
    for j in range(space.n):
        col = R[j] if upward else R[:, j]
        out.append(frozenset(space.points[i] for i in np.flatnonzero(col)))
    return out


def random_cover(rng: np.random.Generator, space: PseudoSpace, kind: str) -> Cover:
    """Cover whose pieces are open (``"open"``), closed (``"closed"``) or arbitrary (``"any"``)."""
    n = space.n
    if kind == "any":
        pieces = []
        for _ in range(int(rng.integers(1, n + 2))):
            pieces.append(frozenset(p for p in space.points if rng.random() < 0.5))
        pieces = [p for p in pieces if p]
    else:
        basic = _closure_sets(space, upward=(kind == "closed"))
        pieces = []
        for _ in range(int(rng.integers(1, n + 1))):
            picks = [b for b in basic if rng.random() < 0.4]
            if picks:
                pieces.append(frozenset().union(*picks))
    covered = frozenset().union(*pieces) if pieces else frozenset()
    for j, p in enumerate(space.points):
        if p not in covered:
            if kind == "any":
                piece = frozenset([p])
            else:
                piece = _closure_sets(space, upward=(kind == "closed"))[j]
            pieces.append(piece)
            covered |= piece
    return Cover(space, tuple(pieces))
