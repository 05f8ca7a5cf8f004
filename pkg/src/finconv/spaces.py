"""Finite pseudotopological spaces.

On a finite set every ultrafilter is principal, so a pseudotopology is the
same thing as a reflexive relation ``a -> x`` ("the principal ultrafilter at
``a`` converges to ``x``").  Continuity becomes relation preservation,
initial structures are intersections of pulled-back relations, final
structures are unions of pushed-forward ones, and the topological reflection
is the reflexive-transitive closure.  See ``docs/finite_model.md`` for the
derivations.

The relation is held as a read-only boolean matrix ``adj`` with
``adj[i, j]`` meaning ``points[i] -> points[j]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .filters import FiniteFilter, SetMap

Label = Hashable


class SpaceError(ValueError):
    """Malformed space, map or construction input."""


@dataclass(frozen=True, eq=False)
class PseudoSpace:
    points: tuple
    adj: np.ndarray

    def __post_init__(self):
        points = tuple(self.points)
        n = len(points)
        adj = np.array(self.adj, dtype=bool).reshape(n, n) if n else np.zeros((0, 0), dtype=bool)
        if len(set(points)) != n:
            raise SpaceError("point labels must be distinct")
        adj = adj.copy()
        np.fill_diagonal(adj, True)
        adj.flags.writeable = False
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_edges(cls, points: Iterable[Label], edges: Iterable[tuple[Label, Label]] = ()) -> "PseudoSpace":
        points = tuple(points)
        pos = {p: i for i, p in enumerate(points)}
        adj = np.zeros((len(points), len(points)), dtype=bool)
        for a, x in edges:
            try:
                adj[pos[a], pos[x]] = True
            except KeyError as exc:
                raise SpaceError(f"edge {a!r}>{x!r} uses an unknown point") from exc
        return cls(points, adj)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def _pos(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, label: Label) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise SpaceError(f"{label!r} is not a point of the space") from None

    def __contains__(self, label: Label) -> bool:
        return label in self._pos

    def conv(self, a: Label, x: Label) -> bool:
        """Does the principal ultrafilter at ``a`` converge to ``x``?"""
        return bool(self.adj[self.index(a), self.index(x)])

    def edges(self, diagonal: bool = False) -> list[tuple[Label, Label]]:
        ii, jj = np.nonzero(self.adj)
        return [(self.points[i], self.points[j]) for i, j in zip(ii, jj) if diagonal or i != j]

    def successors(self, a: Label) -> list:
        return [self.points[j] for j in np.flatnonzero(self.adj[self.index(a)])]

    def predecessors(self, x: Label) -> list:
        return [self.points[i] for i in np.flatnonzero(self.adj[:, self.index(x)])]

    @cached_property
    def is_topological(self) -> bool:
        a = self.adj.astype(np.int64)
        return bool(np.all(((a @ a) > 0) <= self.adj))

    @cached_property
    def _key(self) -> tuple:
        return (self.points, self.adj.tobytes())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PseudoSpace):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        edges = " ".join(f"{a!r}>{x!r}" for a, x in self.edges())
        return f"PseudoSpace(points={list(self.points)!r}, conv=[{edges}])"


@dataclass(frozen=True)
class PointedSpace:
    space: PseudoSpace
    basepoint: Label

    def __post_init__(self):
        if self.basepoint not in self.space:
            raise SpaceError(f"basepoint {self.basepoint!r} is not a point of the space")


@dataclass(frozen=True, eq=False)
class SpaceMap:
    """A total function between the carriers of two pseudospaces.

    Continuity is not enforced; use :func:`is_continuous`.
    """

    dom: PseudoSpace
    cod: PseudoSpace
    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.dom.n:
            raise SpaceError("a map needs exactly one image per domain point")
        object.__setattr__(self, "images", images)
        for y in images:
            if y not in self.cod:
                raise SpaceError(f"image {y!r} is not a point of the codomain")

    @classmethod
    def from_mapping(cls, dom: PseudoSpace, cod: PseudoSpace, mapping: Mapping | Callable) -> "SpaceMap":
        f = mapping.__getitem__ if isinstance(mapping, Mapping) else mapping
        try:
            return cls(dom, cod, tuple(f(x) for x in dom.points))
        except KeyError as exc:
            raise SpaceError(f"map is undefined at {exc.args[0]!r}") from None

    @classmethod
    def from_indices(cls, dom: PseudoSpace, cod: PseudoSpace, idx: Sequence[int]) -> "SpaceMap":
        return cls(dom, cod, tuple(cod.points[i] for i in idx))

    @cached_property
    def idx(self) -> np.ndarray:
        out = np.fromiter((self.cod.index(y) for y in self.images), dtype=np.intp, count=len(self.images))
        out.flags.writeable = False
        return out

    @cached_property
    def _table(self) -> dict:
        return dict(zip(self.dom.points, self.images))

    def __call__(self, x: Label) -> Label:
        try:
            return self._table[x]
        except KeyError:
            raise SpaceError(f"{x!r} is not in the domain") from None

    @property
    def set_map(self) -> SetMap:
        return SetMap(self.dom.points, self.cod.points, self.images)

    def as_dict(self) -> dict:
        return dict(self._table)

    @property
    def is_surjective(self) -> bool:
        return set(self.images) == set(self.cod.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpaceMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, self.images))

    def __repr__(self) -> str:
        return f"SpaceMap({self.as_dict()!r})"


def identity(space: PseudoSpace) -> SpaceMap:
    return SpaceMap(space, space, space.points)


def constant(dom: PseudoSpace, cod: PseudoSpace, y: Label) -> SpaceMap:
    return SpaceMap(dom, cod, (y,) * dom.n)


def compose(outer: SpaceMap, inner: SpaceMap) -> SpaceMap:
    """``outer ∘ inner``."""
    if inner.cod != outer.dom:
        raise SpaceError("maps are not composable")
    return SpaceMap(inner.dom, outer.cod, tuple(outer(y) for y in inner.images))


def retarget(f: SpaceMap, dom: PseudoSpace | None = None, cod: PseudoSpace | None = None) -> SpaceMap:
    """Same underlying function, different structures on domain and/or codomain."""
    dom = f.dom if dom is None else dom
    cod = f.cod if cod is None else cod
    if dom.points != f.dom.points:
        raise SpaceError("new domain has a different carrier")
    return SpaceMap(dom, cod, f.images)


def discrete(points: Iterable[Label]) -> PseudoSpace:
    points = tuple(points)
    return PseudoSpace(points, np.eye(len(points), dtype=bool))


def indiscrete(points: Iterable[Label]) -> PseudoSpace:
    points = tuple(points)
    return PseudoSpace(points, np.ones((len(points), len(points)), dtype=bool))


def point() -> PseudoSpace:
    return discrete(("*",))


def sierpinski(a: Label = 0, b: Label = 1) -> PseudoSpace:
    """Two points with the single non-trivial convergence ``a -> b``."""
    return PseudoSpace.from_edges((a, b), [(a, b)])


def chain(points: Sequence[Label], transitive: bool = True) -> PseudoSpace:
    points = tuple(points)
    edges = [(points[i], points[j]) for i in range(len(points)) for j in range(i + 1, len(points))
             if transitive or j == i + 1]
    return PseudoSpace.from_edges(points, edges)


def converges(space: PseudoSpace, F: FiniteFilter, x: Label) -> bool:
    """A filter converges iff every ultrafilter refining it converges."""
    if set(F.carrier) != set(space.points):
        raise SpaceError("filter carrier does not match the space")
    j = space.index(x)
    return all(space.adj[space.index(a), j] for a in F.core)


def is_continuous(f: SpaceMap) -> bool:
    if f.dom.n == 0:
        return True
    ix = f.idx
    return bool((f.cod.adj[ix[:, None], ix] | ~f.dom.adj).all())


def is_continuous_at(f: SpaceMap, x: Label) -> bool:
    j = f.dom.index(x)
    ix = f.idx
    return bool(np.all(f.cod.adj[ix, ix[j]] | ~f.dom.adj[:, j]))


def _function(fn: Any) -> Callable:
    if isinstance(fn, (SpaceMap, SetMap)):
        return fn
    if isinstance(fn, Mapping):
        return fn.__getitem__
    return fn


def _indices(points: Sequence[Label], fn: Any, target: PseudoSpace) -> np.ndarray:
    fn = _function(fn)
    return np.fromiter((target.index(fn(a)) for a in points), dtype=np.intp, count=len(points))


def initial_structure(carrier: Iterable[Label], sinks: Iterable[tuple[Any, PseudoSpace]]) -> PseudoSpace:
    """Greatest structure on ``carrier`` making every ``fn: carrier -> Y`` continuous."""
    carrier = tuple(carrier)
    n = len(carrier)
    adj = np.ones((n, n), dtype=bool)
    for fn, Y in sinks:
        ix = _indices(carrier, fn, Y)
        if n:
            adj &= Y.adj[np.ix_(ix, ix)]
    return PseudoSpace(carrier, adj)


def final_structure(carrier: Iterable[Label], sources: Iterable[tuple[PseudoSpace, Any]]) -> PseudoSpace:
    """Least structure on ``carrier`` making every ``fn: X -> carrier`` continuous."""
    carrier = tuple(carrier)
    target = discrete(carrier)
    adj = np.eye(len(carrier), dtype=bool)
    for X, fn in sources:
        ix = _indices(X.points, fn, target)
        ii, jj = np.nonzero(X.adj)
        adj[ix[ii], ix[jj]] = True
    return PseudoSpace(carrier, adj)


def product(spaces: Sequence[PseudoSpace]) -> PseudoSpace:
    """Initial structure along the projections; points are tuples in lexicographic order."""
    points = tuple(itertools.product(*(X.points for X in spaces)))
    adj = np.ones((1, 1), dtype=bool)
    for X in spaces:
        adj = np.kron(adj, X.adj).astype(bool)
    return PseudoSpace(points, adj.reshape(len(points), len(points)))


def projection(prod: PseudoSpace, factor: PseudoSpace, k: int) -> SpaceMap:
    return SpaceMap(prod, factor, tuple(p[k] for p in prod.points))


def coproduct(spaces: Sequence[PseudoSpace]) -> PseudoSpace:
    """Disjoint union; points are ``(k, x)``."""
    points = tuple((k, x) for k, X in enumerate(spaces) for x in X.points)
    n = len(points)
    adj = np.zeros((n, n), dtype=bool)
    off = 0
    for X in spaces:
        adj[off:off + X.n, off:off + X.n] = X.adj
        off += X.n
    return PseudoSpace(points, adj)


def subspace(space: PseudoSpace, subset: Iterable[Label]) -> PseudoSpace:
    keep = set(subset)
    for s in keep:
        space.index(s)
    ix = [i for i, p in enumerate(space.points) if p in keep]
    return PseudoSpace(tuple(space.points[i] for i in ix), space.adj[np.ix_(ix, ix)])


def inclusion(sub: PseudoSpace, space: PseudoSpace) -> SpaceMap:
    return SpaceMap(sub, space, sub.points)


def restrict(f: SpaceMap, subset: Iterable[Label]) -> SpaceMap:
    sub = subspace(f.dom, subset)
    return SpaceMap(sub, f.cod, tuple(f(x) for x in sub.points))


def quotient(space: PseudoSpace, q: Any, codomain: Sequence[Label] | None = None) -> PseudoSpace:
    """Final structure along a surjection ``q`` out of ``space``."""
    if isinstance(q, (SpaceMap, SetMap)):
        fn = q
        if codomain is None:
            codomain = q.cod.points if isinstance(q, SpaceMap) else q.codomain
    else:
        fn = _function(q)
        if codomain is None:
            seen = {}
            for a in space.points:
                seen.setdefault(fn(a), None)
            codomain = tuple(seen)
    codomain = tuple(codomain)
    if set(fn(a) for a in space.points) != set(codomain):
        raise SpaceError("quotient map is not surjective")
    return final_structure(codomain, [(space, fn)])


def transitive_closure(adj: np.ndarray) -> np.ndarray:
    out = np.array(adj, dtype=bool)
    for k in range(out.shape[0]):
        out |= np.outer(out[:, k], out[k, :])
    return out


def reflect_top(space: PseudoSpace) -> PseudoSpace:
    """Finest topology coarser than ``space`` (reflexive-transitive closure)."""
    if space.is_topological:
        return space
    return PseudoSpace(space.points, transitive_closure(space.adj))


def reflect_epi(space: PseudoSpace) -> PseudoSpace:
    """Epitopological reflection; on finite carriers epispaces are topological."""
    return reflect_top(space)


def reflect_epi_to_top(space: PseudoSpace) -> PseudoSpace:
    if not space.is_topological:
        raise SpaceError("argument is not an epispace (finite epispaces are exactly the topological ones)")
    return space


def is_epitopological(space: PseudoSpace) -> bool:
    return space.is_topological


def _mask(space: PseudoSpace, subset: Iterable[Label]) -> np.ndarray:
    m = np.zeros(space.n, dtype=bool)
    for s in subset:
        m[space.index(s)] = True
    return m


def is_open(space: PseudoSpace, subset: Iterable[Label]) -> bool:
    """Open in the reflected topology: ``a -> x`` with ``x`` in the set forces ``a`` in the set."""
    m = _mask(space, subset)
    return not bool(np.any(space.adj[:, m].any(axis=1) & ~m))


def is_closed(space: PseudoSpace, subset: Iterable[Label]) -> bool:
    m = _mask(space, subset)
    return is_open(space, [p for p, inside in zip(space.points, m) if not inside])


def minimal_open(space: PseudoSpace, x: Label) -> frozenset:
    """Smallest open set of the reflected topology containing ``x``."""
    col = transitive_closure(space.adj)[:, space.index(x)] if not space.is_topological \
        else space.adj[:, space.index(x)]
    return frozenset(space.points[i] for i in np.flatnonzero(col))


def _subsets(points: tuple) -> Iterator[tuple[int, frozenset]]:
    for mask in range(1 << len(points)):
        yield mask, frozenset(p for i, p in enumerate(points) if mask >> i & 1)


MAX_OPEN_ENUMERATION = 16


def open_sets(space: PseudoSpace) -> list[frozenset]:
    """All open sets of the reflected topology, ordered by size then label order."""
    if space.n > MAX_OPEN_ENUMERATION:
        raise SpaceError(f"open-set enumeration is limited to {MAX_OPEN_ENUMERATION} points")
    opens = [s for _, s in _subsets(space.points) if is_open(space, s)]
    order = space._pos
    return sorted(opens, key=lambda s: (len(s), sorted(order[p] for p in s)))


def space_from_opens(points: Iterable[Label], opens: Iterable[Iterable[Label]]) -> PseudoSpace:
    """Ultrafilter convergence of a topology: ``a -> x`` iff every open set around ``x`` contains ``a``."""
    points = tuple(points)
    opens = [frozenset(o) for o in opens]
    edges = [(a, x) for x in points for a in points
             if all(a in o for o in opens if x in o)]
    return PseudoSpace.from_edges(points, edges)


def final_topology(carrier: Iterable[Label], sources: Iterable[tuple[PseudoSpace, Any]]) -> PseudoSpace:
    """Final topology computed from open sets: ``S`` is open iff every preimage is open in ``R X``."""
    carrier = tuple(carrier)
    if len(carrier) > MAX_OPEN_ENUMERATION:
        raise SpaceError(f"final topologies are limited to {MAX_OPEN_ENUMERATION} points")
    sources = [(reflect_top(X), _function(fn)) for X, fn in sources]
    opens = []
    for _, s in _subsets(carrier):
        if all(is_open(X, [a for a in X.points if fn(a) in s]) for X, fn in sources):
            opens.append(s)
    return space_from_opens(carrier, opens)


def _same_carrier(structures: Sequence[PseudoSpace]) -> tuple:
    if not structures:
        raise SpaceError("at least one structure is required")
    pts = structures[0].points
    if any(S.points != pts for S in structures):
        raise SpaceError("structures live on different carriers")
    return pts


def lattice_meet(structures: Sequence[PseudoSpace]) -> PseudoSpace:
    pts = _same_carrier(structures)
    return PseudoSpace(pts, np.logical_and.reduce([S.adj for S in structures]))


def lattice_join(structures: Sequence[PseudoSpace]) -> PseudoSpace:
    pts = _same_carrier(structures)
    return PseudoSpace(pts, np.logical_or.reduce([S.adj for S in structures]))


def is_finer(a: PseudoSpace, b: PseudoSpace) -> bool:
    """``a ⊆ b`` as convergence relations (fewer convergent ultrafilters)."""
    _same_carrier([a, b])
    return bool(np.all(a.adj <= b.adj))


def is_quotient_map(f: SpaceMap) -> bool:
    if not f.is_surjective or not is_continuous(f):
        return False
    return f.cod == final_structure(f.cod.points, [(f.dom, f)])


def is_isomorphic(a: PseudoSpace, b: PseudoSpace) -> bool:
    if a.n != b.n or int(a.adj.sum()) != int(b.adj.sum()):
        return False
    for perm in itertools.permutations(range(b.n)):
        p = np.array(perm, dtype=np.intp)
        if np.array_equal(b.adj[np.ix_(p, p)], a.adj):
            return True
    return False


def to_dot(space: PseudoSpace, name: str = "X") -> str:
    """Graphviz source; the diagonal is omitted, edges breaking transitivity are dashed red."""
    lines = [f'digraph "{name}" {{']
    for p in space.points:
        lines.append(f'  "{_dot_label(p)}";')
    for i, j in zip(*np.nonzero(space.adj)):
        if i == j:
            continue
        # an edge that composes into a missing edge witnesses non-transitivity
        bad = bool(np.any(space.adj[j] & ~space.adj[i])) or bool(np.any(space.adj[:, i] & ~space.adj[:, j]))
        style = ' [style=dashed, color=red]' if bad else ''
        lines.append(f'  "{_dot_label(space.points[i])}" -> "{_dot_label(space.points[j])}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_label(p: Label) -> str:
    from .harness.docformat import render_label
    return render_label(p).replace('"', r'\"')
