"""Map spaces, evaluation, currying and homotopy between finite pseudospaces.

The exponential structure on the set of continuous maps ``X -> Y`` is the
continuous-convergence structure.  With all ultrafilters principal it reads

    g -> f   iff   g(a) -> f(x) in Y for every a -> x in X,

which :func:`exp_edge_via_filters` re-derives literally from filters as an
independent check.  Two maps are homotopic iff they lie in the same weak
component of the (pointed) map space; the argument is in
``docs/finite_model.md``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .filters import all_filters, filter_product, principal, pushforward, SetMap
from .spaces import (
    PointedSpace,
    PseudoSpace,
    SpaceError,
    SpaceMap,
    converges,
    is_continuous,
    product,
)


class MapPoint(tuple):
    """A point of a map space: the images of the exponent's points, in order."""

    def __repr__(self) -> str:
        return "[" + ",".join(repr(y) for y in self) + "]"


class HomotopySearchLimit(RuntimeError):
    """The lazy map-space search exceeded its node budget."""


def _bitmasks(Y: PseudoSpace) -> tuple[list[int], list[int]]:
    succ = [sum(1 << j for j in np.flatnonzero(Y.adj[v])) for v in range(Y.n)]
    pred = [sum(1 << i for i in np.flatnonzero(Y.adj[:, v])) for v in range(Y.n)]
    return succ, pred


def _search(X: PseudoSpace, Y: PseudoSpace, masks: Sequence[int] | None = None,
            rng: np.random.Generator | None = None) -> Iterator[tuple[int, ...]]:
    """Backtracking over relation homomorphisms ``X -> Y`` as index tuples.

    ``masks[i]`` restricts the admissible images of point ``i``.  Points are
    assigned in descending degree order so constraints bite early.
    """
    n, m = X.n, Y.n
    full = (1 << m) - 1
    masks = [full] * n if masks is None else list(masks)
    succ, pred = _bitmasks(Y)
    off = X.adj & ~np.eye(n, dtype=bool)
    degree = off.sum(axis=0) + off.sum(axis=1)
    order = sorted(range(n), key=lambda i: (-int(degree[i]), i))
    placed: set[int] = set()
    constraints = []
    for i in order:
        out_to = [j for j in placed if off[i, j]]
        in_from = [j for j in placed if off[j, i]]
        constraints.append((i, out_to, in_from))
        placed.add(i)
    values = [0] * n

    def candidates(mask: int) -> list[int]:
        cs = [v for v in range(m) if mask >> v & 1]
        if rng is not None:
            rng.shuffle(cs)
        return cs

    def rec(depth: int) -> Iterator[tuple[int, ...]]:
        if depth == n:
            yield tuple(values)
            return
        i, out_to, in_from = constraints[depth]
        mask = masks[i]
        for j in out_to:
            mask &= pred[values[j]]
        for j in in_from:
            mask &= succ[values[j]]
        for v in candidates(mask):
            values[i] = v
            yield from rec(depth + 1)

    if n == 0:
        yield ()
        return
    yield from rec(0)


def continuous_map_indices(X: PseudoSpace, Y: PseudoSpace, pointed: tuple | None = None) -> list[tuple[int, ...]]:
    masks = None
    if pointed is not None:
        x0, y0 = pointed
        masks = [(1 << Y.n) - 1] * X.n
        masks[X.index(x0)] = 1 << Y.index(y0)
    return sorted(_search(X, Y, masks))


def continuous_maps(X: PseudoSpace, Y: PseudoSpace) -> list[SpaceMap]:
    """All continuous maps in canonical (label-lexicographic) order."""
    return [SpaceMap.from_indices(X, Y, t) for t in continuous_map_indices(X, Y)]


def random_continuous_map(X: PseudoSpace, Y: PseudoSpace, rng: np.random.Generator,
                          masks: Sequence[int] | None = None) -> SpaceMap | None:
    """First map found by randomized backtracking, or None when no map exists."""
    for t in _search(X, Y, masks, rng=rng):
        return SpaceMap.from_indices(X, Y, t)
    return None


def _exp_adj(X: PseudoSpace, Y: PseudoSpace, M: np.ndarray) -> np.ndarray:
    k = M.shape[0]
    E = np.ones((k, k), dtype=bool)
    for a, x in zip(*np.nonzero(X.adj)):
        E &= Y.adj[M[:, a][:, None], M[:, x][None, :]]
    return E


@dataclass(frozen=True, eq=False)
class MapSpace:
    base: PseudoSpace
    target: PseudoSpace
    maps: tuple
    structure: PseudoSpace

    def map_at(self, label: MapPoint) -> SpaceMap:
        return SpaceMap(self.base, self.target, tuple(label))

    def label_of(self, f: SpaceMap) -> MapPoint:
        label = MapPoint(f.images)
        self.structure.index(label)
        return label

    @cached_property
    def index_array(self) -> np.ndarray:
        if not self.maps:
            return np.zeros((0, self.base.n), dtype=np.intp)
        return np.array([m.idx for m in self.maps], dtype=np.intp).reshape(len(self.maps), self.base.n)


def _map_space(X: PseudoSpace, Y: PseudoSpace, index_tuples: list[tuple[int, ...]]) -> MapSpace:
    maps = tuple(SpaceMap.from_indices(X, Y, t) for t in index_tuples)
    M = np.array(index_tuples, dtype=np.intp).reshape(len(index_tuples), X.n)
    labels = tuple(MapPoint(m.images) for m in maps)
    return MapSpace(X, Y, maps, PseudoSpace(labels, _exp_adj(X, Y, M)))


def exponential(X: PseudoSpace, Y: PseudoSpace) -> MapSpace:
    return _map_space(X, Y, continuous_map_indices(X, Y))


def pointed_map_space(X: PointedSpace, Y: PointedSpace) -> MapSpace:
    """Subspace of the exponential on basepoint-preserving maps."""
    return _map_space(X.space, Y.space, continuous_map_indices(X.space, Y.space, (X.basepoint, Y.basepoint)))


def exp_edge(g: SpaceMap, f: SpaceMap) -> bool:
    """Does the principal ultrafilter at ``g`` converge to ``f`` in the map space?"""
    X, Y = g.dom, g.cod
    return bool(np.all(Y.adj[np.ix_(g.idx, f.idx)] | ~X.adj))


def exp_edge_via_filters(ms: MapSpace, g: SpaceMap, f: SpaceMap) -> bool:
    """The continuous-convergence rule evaluated with filters.

    ``ġ -> f`` iff for every filter ``G -> x`` on the exponent, the image of
    ``ġ × G`` under evaluation converges to ``f(x)``.
    """
    X, Y = ms.base, ms.target
    labels = ms.structure.points
    F = principal(labels, MapPoint(g.images))
    carrier = tuple((h, x) for h in labels for x in X.points)
    ev = SetMap(carrier, Y.points, tuple(h[X.index(x)] for h, x in carrier))
    for G in all_filters(X.points):
        for x in X.points:
            if not converges(X, G, x):
                continue
            image = pushforward(ev, filter_product(F, G))
            if not converges(Y, image, f(x)):
                return False
    return True


def evaluation_map(X: PseudoSpace, Y: PseudoSpace, ms: MapSpace | None = None) -> SpaceMap:
    ms = exponential(X, Y) if ms is None else ms
    dom = product([ms.structure, X])
    ev = SpaceMap(dom, Y, tuple(h[X.index(x)] for h, x in dom.points))
    assert is_continuous(ev), "evaluation must be continuous"
    return ev


@lru_cache(maxsize=256)
def _pair(Z: PseudoSpace, X: PseudoSpace) -> PseudoSpace:
    return product([Z, X])


def curry(h: SpaceMap, Z: PseudoSpace, X: PseudoSpace, ms: MapSpace | None = None) -> SpaceMap:
    """``h: Z × X -> Y`` becomes ``ĥ: Z -> Y^X`` with ``ĥ(z)(x) = h(z, x)``."""
    if h.dom != _pair(Z, X):
        raise SpaceError("curry expects a map out of Z × X")
    if not is_continuous(h):
        raise SpaceError("only continuous maps can be curried")
    Y = h.cod
    ms = exponential(X, Y) if ms is None else ms
    images = tuple(MapPoint(h((z, x)) for x in X.points) for z in Z.points)
    out = SpaceMap(Z, ms.structure, images)
    assert is_continuous(out)
    return out


def uncurry(k: SpaceMap, ms: MapSpace) -> SpaceMap:
    """``k: Z -> Y^X`` becomes ``Z × X -> Y``."""
    if k.cod != ms.structure:
        raise SpaceError("uncurry expects a map into the given map space")
    X, Y, Z = ms.base, ms.target, k.dom
    dom = _pair(Z, X)
    return SpaceMap(dom, Y, tuple(k(z)[X.index(x)] for z, x in dom.points))


def weak_component_labels(space: PseudoSpace) -> np.ndarray:
    if space.n == 0:
        return np.zeros(0, dtype=np.intp)
    _, labels = connected_components(space.adj, directed=True, connection="weak")
    return labels


def _check_pair(f: SpaceMap, g: SpaceMap, basepoints) -> None:
    if f.dom != g.dom or f.cod != g.cod:
        raise SpaceError("maps must share domain and codomain")
    if not (is_continuous(f) and is_continuous(g)):
        raise SpaceError("homotopy is only defined between continuous maps")
    if basepoints is not None:
        x0, y0 = basepoints
        if f(x0) != y0 or g(x0) != y0:
            raise SpaceError("pointed homotopy needs basepoint-preserving maps")


def _neighbours(X: PseudoSpace, Y: PseudoSpace, h: tuple, fixed: tuple | None) -> Iterator[tuple]:
    succ, pred = _bitmasks(Y)
    full = (1 << Y.n) - 1
    out_masks = [full] * X.n
    in_masks = [full] * X.n
    for a, x in zip(*np.nonzero(X.adj)):
        out_masks[x] &= succ[h[a]]   # h -> k needs h(a) -> k(x)
        in_masks[a] &= pred[h[x]]    # k -> h needs k(a) -> h(x)
    if fixed is not None:
        i, v = fixed
        out_masks[i] &= 1 << v
        in_masks[i] &= 1 << v
    yield from _search(X, Y, out_masks)
    yield from _search(X, Y, in_masks)


def are_homotopic(f: SpaceMap, g: SpaceMap, basepoints: tuple | None = None,
                  max_maps: int = 200_000) -> bool:
    """Same weak component of the (pointed) map space ``C(X, Y)``.

    The map space is explored lazily from ``f``; ``basepoints = (x0, y0)``
    restricts to pointed maps.  Raises :class:`HomotopySearchLimit` if more
    than ``max_maps`` maps would have to be visited.
    """
    _check_pair(f, g, basepoints)
    if f.images == g.images:
        return True
    X, Y = f.dom, f.cod
    comp = weak_component_labels(Y)
    if np.any(comp[f.idx] != comp[g.idx]):
        return False
    if np.array_equal(Y.adj, Y.adj.T) and Y.is_topological:
        # equivalence relation: f(a) ~ f(x) ~ g(x) gives the direct edge f -> g
        return True
    fixed = None if basepoints is None else (X.index(basepoints[0]), Y.index(basepoints[1]))
    target = tuple(int(v) for v in g.idx)
    target_arr = np.array(target, dtype=np.intp)

    def linked(h: tuple) -> bool:
        ha = np.array(h, dtype=np.intp)
        fwd = np.all(Y.adj[np.ix_(ha, target_arr)] | ~X.adj)
        bwd = np.all(Y.adj[np.ix_(target_arr, ha)] | ~X.adj)
        return bool(fwd or bwd)

    start = tuple(int(v) for v in f.idx)
    seen = {start}
    queue = deque([start])
    while queue:
        h = queue.popleft()
        if linked(h):
            return True
        for k in _neighbours(X, Y, h, fixed):
            if k not in seen:
                seen.add(k)
                if len(seen) > max_maps:
                    raise HomotopySearchLimit(f"more than {max_maps} maps visited")
                queue.append(k)
    return False


def homotopy_classes(ms: MapSpace) -> list[list[SpaceMap]]:
    """Weak components of an enumerated map space, in canonical order."""
    labels = weak_component_labels(ms.structure)
    classes: dict[int, list[SpaceMap]] = {}
    for lab, m in zip(labels, ms.maps):
        classes.setdefault(int(lab), []).append(m)
    return list(classes.values())


@dataclass(frozen=True)
class HGroupReport:
    right_unit: bool
    left_unit: bool
    right_inverse: bool
    left_inverse: bool
    associative: bool

    @property
    def ok(self) -> bool:
        return all((self.right_unit, self.left_unit, self.right_inverse, self.left_inverse, self.associative))

    def as_dict(self) -> dict:
        return {
            "right_unit": self.right_unit,
            "left_unit": self.left_unit,
            "right_inverse": self.right_inverse,
            "left_inverse": self.left_inverse,
            "associative": self.associative,
            "ok": self.ok,
        }


def is_h_group(X: PointedSpace, wedge: SpaceMap, sigma: SpaceMap, max_maps: int = 200_000) -> HGroupReport:
    """Check the H-group clauses up to pointed homotopy."""
    S, x0 = X.space, X.basepoint
    S2 = product([S, S])
    if wedge.dom != S2 or wedge.cod != S:
        raise SpaceError("wedge must be a map X × X -> X")
    if sigma.dom != S or sigma.cod != S:
        raise SpaceError("sigma must be a map X -> X")
    if not (is_continuous(wedge) and is_continuous(sigma)):
        raise SpaceError("wedge and sigma must be continuous")
    if wedge((x0, x0)) != x0 or sigma(x0) != x0:
        raise SpaceError("wedge and sigma must preserve the basepoint")

    base = (x0, x0)
    ident = SpaceMap(S, S, S.points)
    const = SpaceMap(S, S, (x0,) * S.n)

    def on_points(fn) -> SpaceMap:
        return SpaceMap(S, S, tuple(fn(x) for x in S.points))

    def homotopic(a: SpaceMap, b: SpaceMap, bp) -> bool:
        return are_homotopic(a, b, bp, max_maps=max_maps)

    right_unit = homotopic(on_points(lambda x: wedge((x, x0))), ident, base)
    left_unit = homotopic(on_points(lambda x: wedge((x0, x))), ident, base)
    right_inverse = homotopic(on_points(lambda x: wedge((x, sigma(x)))), const, base)
    left_inverse = homotopic(on_points(lambda x: wedge((sigma(x), x))), const, base)

    S3 = product([S, S, S])
    left_assoc = SpaceMap(S3, S, tuple(wedge((wedge((a, b)), c)) for a, b, c in S3.points))
    right_assoc = SpaceMap(S3, S, tuple(wedge((a, wedge((b, c)))) for a, b, c in S3.points))
    associative = homotopic(left_assoc, right_assoc, ((x0, x0, x0), x0))
    return HGroupReport(right_unit, left_unit, right_inverse, left_inverse, associative)


def exp_product_iso(X: PseudoSpace, Y: PseudoSpace, Z: PseudoSpace) -> bool:
    """``(Y × Z)^X`` against ``Y^X × Z^X`` under ``h ↦ (π₁ h, π₂ h)``."""
    lhs = exponential(X, product([Y, Z]))
    ey, ez = exponential(X, Y), exponential(X, Z)
    rhs = product([ey.structure, ez.structure])
    image = []
    for h in lhs.maps:
        image.append((MapPoint(p[0] for p in h.images), MapPoint(p[1] for p in h.images)))
    if len(set(image)) != len(image) or set(image) != set(rhs.points):
        return False
    phi = SpaceMap(lhs.structure, rhs, tuple(image))
    ix = phi.idx
    return bool(np.array_equal(rhs.adj[np.ix_(ix, ix)], lhs.structure.adj))

