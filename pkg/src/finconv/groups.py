"""Finite groups carrying a convergence structure."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterator, Mapping

import numpy as np

from .exponentials import HGroupReport, is_h_group
from .spaces import PointedSpace, PseudoSpace, SpaceError, SpaceMap, is_continuous, product


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ConvergenceGroup:
    space: PseudoSpace
    unit: Hashable
    mult: Mapping
    inv: Mapping

    def __post_init__(self):
        pts = self.space.points
        if self.unit not in self.space:
            raise GroupError("the unit is not a point of the space")
        for a, b in itertools.product(pts, pts):
            if (a, b) not in self.mult:
                raise GroupError(f"multiplication table is missing {a!r}.{b!r}")
            if self.mult[a, b] not in self.space:
                raise GroupError(f"{a!r}.{b!r} lands outside the group")
        for a in pts:
            if self.mult[self.unit, a] != a or self.mult[a, self.unit] != a:
                raise GroupError(f"{self.unit!r} is not a unit at {a!r}")
            if a not in self.inv or self.inv[a] not in self.space:
                raise GroupError(f"missing inverse of {a!r}")
            if self.mult[a, self.inv[a]] != self.unit or self.mult[self.inv[a], a] != self.unit:
                raise GroupError(f"{self.inv[a]!r} is not an inverse of {a!r}")
        for a, b, c in itertools.product(pts, pts, pts):
            if self.mult[self.mult[a, b], c] != self.mult[a, self.mult[b, c]]:
                raise GroupError(f"associativity fails at ({a!r}, {b!r}, {c!r})")
        object.__setattr__(self, "mult", dict(self.mult))
        object.__setattr__(self, "inv", dict(self.inv))

    @classmethod
    def from_table(cls, space: PseudoSpace, mult: Mapping, unit=None) -> "ConvergenceGroup":
        """Find the unit and inverses from the multiplication table alone."""
        pts = space.points
        if unit is None:
            units = [e for e in pts if all(mult.get((e, a)) == a and mult.get((a, e)) == a for a in pts)]
            if not units:
                raise GroupError("the table has no two-sided unit")
            unit = units[0]
        inv = {}
        for a in pts:
            cands = [b for b in pts if mult.get((a, b)) == unit]
            if not cands:
                raise GroupError(f"{a!r} has no inverse")
            inv[a] = cands[0]
        return cls(space, unit, mult, inv)

    def with_space(self, space: PseudoSpace) -> "ConvergenceGroup":
        if space.points != self.space.points:
            raise GroupError("new structure lives on a different carrier")
        return ConvergenceGroup(space, self.unit, self.mult, self.inv)

    @cached_property
    def mult_map(self) -> SpaceMap:
        dom = product([self.space, self.space])
        return SpaceMap(dom, self.space, tuple(self.mult[p] for p in dom.points))

    @cached_property
    def inv_map(self) -> SpaceMap:
        return SpaceMap(self.space, self.space, tuple(self.inv[a] for a in self.space.points))

    def left_translation(self, g) -> SpaceMap:
        return SpaceMap(self.space, self.space, tuple(self.mult[g, a] for a in self.space.points))

    def right_translation(self, g) -> SpaceMap:
        return SpaceMap(self.space, self.space, tuple(self.mult[a, g] for a in self.space.points))

    @property
    def order(self) -> int:
        return self.space.n


def is_pstop_group(G: ConvergenceGroup) -> bool:
    """Multiplication (on the product structure) and inversion are continuous."""
    return is_continuous(G.inv_map) and is_continuous(G.mult_map)


def is_quasitop_group(G: ConvergenceGroup) -> bool:
    """Topology, continuous inversion and continuous translations on both sides."""
    if not G.space.is_topological or not is_continuous(G.inv_map):
        return False
    return all(is_continuous(G.left_translation(g)) and is_continuous(G.right_translation(g))
               for g in G.space.points)


def is_top_group(G: ConvergenceGroup) -> bool:
    return G.space.is_topological and is_pstop_group(G)


def h_group_report(G: ConvergenceGroup) -> HGroupReport:
    if not is_pstop_group(G):
        raise SpaceError("H-group structure needs continuous multiplication and inversion")
    return is_h_group(PointedSpace(G.space, G.unit), G.mult_map, G.inv_map)


def pstop_closure(G: ConvergenceGroup, adj: np.ndarray) -> PseudoSpace:
    """Smallest structure containing ``adj`` that makes ``G`` a pseudotopological group.

    The edges must form a subset of ``G × G`` closed under the componentwise
    product and inverse, so the closure is the generated subgroup.
    """
    pts = G.space.points
    pos = {p: i for i, p in enumerate(pts)}
    n = len(pts)
    edges = {(a, a) for a in pts}
    edges.update((pts[i], pts[j]) for i, j in zip(*np.nonzero(np.asarray(adj, dtype=bool).reshape(n, n))))
    frontier = set(edges)
    while frontier:
        new = set()
        for (a, x) in frontier:
            inv = (G.inv[a], G.inv[x])
            if inv not in edges:
                new.add(inv)
            for (b, y) in edges:
                for e in ((G.mult[a, b], G.mult[x, y]), (G.mult[b, a], G.mult[y, x])):
                    if e not in edges:
                        new.add(e)
        edges |= new
        frontier = new
    out = np.zeros((n, n), dtype=bool)
    for a, x in edges:
        out[pos[a], pos[x]] = True
    return PseudoSpace(pts, out)


# Small groups by table

def cyclic_group(n: int, space: PseudoSpace | None = None) -> ConvergenceGroup:
    from .spaces import discrete
    space = discrete(range(n)) if space is None else space
    mult = {(a, b): (a + b) % n for a in range(n) for b in range(n)}
    return ConvergenceGroup(space, 0, mult, {a: (-a) % n for a in range(n)})


def _from_elements(elements: list, op, space: PseudoSpace | None = None) -> ConvergenceGroup:
    from .spaces import discrete
    label = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    space = discrete(range(n)) if space is None else space
    mult = {(label[a], label[b]): label[op(a, b)] for a in elements for b in elements}
    return ConvergenceGroup.from_table(space, mult, unit=0)


def klein_four(space: PseudoSpace | None = None) -> ConvergenceGroup:
    elements = [(0, 0), (0, 1), (1, 0), (1, 1)]
    return _from_elements(elements, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), space)


def symmetric_group_3(space: PseudoSpace | None = None) -> ConvergenceGroup:
    elements = sorted(itertools.permutations(range(3)))
    return _from_elements(elements, lambda p, q: tuple(p[q[i]] for i in range(3)), space)


def small_groups(max_order: int = 6) -> Iterator[tuple[str, ConvergenceGroup]]:
    """One representative of every isomorphism class of order ``<= max_order`` (at most 6)."""
    if max_order > 6:
        raise ValueError("only orders up to 6 are tabulated")
    for n in range(1, max_order + 1):
        yield f"Z{n}", cyclic_group(n)
        if n == 4:
            yield "Z2xZ2", klein_four()
        if n == 6:
            yield "S3", symmetric_group_3()
