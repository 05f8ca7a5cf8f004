"""Path components, biquotient maps and Kent's criterion on finite spaces.

Path components of a finite pseudospace are the weak components of its
convergence relation, so the component quotient always carries the discrete
structure.  The biquotient test and Kent's comparison of final structures are
nontrivial for general surjections and are exercised that way.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .exponentials import weak_component_labels
from .filters import SetMap
from .spaces import (
    PseudoSpace,
    SpaceError,
    SpaceMap,
    compose,
    discrete,
    final_structure,
    final_topology,
    is_continuous,
    is_quotient_map,
    minimal_open,
    open_sets,
    product,
    reflect_top,
)


@dataclass(frozen=True, eq=False)
class ComponentQuotient:
    source: PseudoSpace
    classes: tuple
    projection: SpaceMap
    quotient: PseudoSpace

    def class_of(self, x) -> Any:
        return self.projection(x)


def path_components(space: PseudoSpace) -> ComponentQuotient:
    """Each class is labelled by its first point in label order."""
    labels = weak_component_labels(space)
    groups: dict[int, list] = {}
    for lab, p in zip(labels, space.points):
        groups.setdefault(int(lab), []).append(p)
    classes = tuple(sorted((tuple(g) for g in groups.values()), key=lambda g: space.index(g[0])))
    reps = tuple(c[0] for c in classes)
    rep_of = {p: c[0] for c in classes for p in c}
    quotient = final_structure(reps, [(space, rep_of)])
    projection = SpaceMap(space, quotient, tuple(rep_of[p] for p in space.points))
    # an edge between classes would have merged them
    assert quotient == discrete(reps)
    assert is_quotient_map(projection)
    return ComponentQuotient(space, classes, projection, quotient)


def induced_map(f: SpaceMap, cx: ComponentQuotient | None = None,
                cy: ComponentQuotient | None = None) -> SpaceMap:
    """The map on components with ``πC f ∘ q_X = q_Y ∘ f``."""
    if not is_continuous(f):
        raise SpaceError("only continuous maps induce maps on components")
    cx = path_components(f.dom) if cx is None else cx
    cy = path_components(f.cod) if cy is None else cy
    images = []
    for cls in cx.classes:
        targets = {cy.class_of(f(x)) for x in cls}
        if len(targets) != 1:
            raise AssertionError(f"continuous map splits the component {cls!r}")
        images.append(targets.pop())
    out = SpaceMap(cx.quotient, cy.quotient, tuple(images))
    assert compose(out, cx.projection).images == compose(cy.projection, f).images
    return out


def _require_topological_surjection(f: SpaceMap) -> None:
    if not (f.dom.is_topological and f.cod.is_topological):
        raise SpaceError("biquotient maps are tested between topological spaces")
    if not f.is_surjective or not is_continuous(f):
        raise SpaceError("biquotient maps must be continuous surjections")


def is_biquotient(f: SpaceMap, brute_force: bool = False) -> bool:
    """Every ``U_y`` lies in the union of the images of the minimal opens over the fiber."""
    _require_topological_surjection(f)
    if brute_force:
        return _is_biquotient_by_covers(f)
    for y in f.cod.points:
        reach = set()
        for x in f.dom.points:
            if f(x) == y:
                reach.update(f(a) for a in minimal_open(f.dom, x))
        if not minimal_open(f.cod, y) <= reach:
            return False
    return True


BRUTE_FORCE_MAX_POINTS = 4


def _is_biquotient_by_covers(f: SpaceMap) -> bool:
    """Definition check: all open covers of every fiber, via bitmasks."""
    X, Y = f.dom, f.cod
    if X.n > BRUTE_FORCE_MAX_POINTS:
        raise SpaceError(f"cover enumeration is limited to {BRUTE_FORCE_MAX_POINTS} points")
    bit = {p: 1 << i for i, p in enumerate(X.points)}
    ybit = {p: 1 << i for i, p in enumerate(Y.points)}
    opens = [sum(bit[p] for p in o) for o in open_sets(X)]
    image = {o: sum({ybit[f(p)] for p in X.points if bit[p] & o}) for o in opens}
    y_opens = [sum(ybit[p] for p in o) for o in open_sets(Y)]
    for y in Y.points:
        fiber = sum(bit[x] for x in X.points if f(x) == y)
        nbhds = [o for o in y_opens if o & ybit[y]]
        relevant = [o for o in opens if o & fiber]
        for r in range(1, len(relevant) + 1):
            for family in itertools.combinations(relevant, r):
                covered = 0
                for o in family:
                    covered |= o
                if covered & fiber != fiber:
                    continue
                union = 0
                for o in family:
                    union |= image[o]
                # finitely many images must contain some open neighbourhood of y
                if not any(nb & ~union == 0 for nb in nbhds):
                    return False
    return True


@dataclass(frozen=True)
class KentVerdict:
    pstop_quotient: PseudoSpace
    top_quotient: PseudoSpace
    coincide: bool
    biquotient: bool

    @property
    def agree(self) -> bool:
        return self.coincide == self.biquotient

    def as_dict(self) -> dict:
        from .harness.docformat import render_label
        def edges(s):
            return [f"{render_label(a)}>{render_label(x)}" for a, x in s.edges()]
        return {
            "structures_coincide": self.coincide,
            "biquotient": self.biquotient,
            "agree": self.agree,
            "pstop_edges": edges(self.pstop_quotient),
            "top_edges": edges(self.top_quotient),
        }


def check_kent(space: PseudoSpace, q: Any, codomain: Sequence | None = None) -> KentVerdict:
    """Compare the final pseudotopology and final topology along a surjection."""
    if not space.is_topological:
        raise SpaceError("Kent's criterion is stated for topological domains")
    if isinstance(q, SpaceMap):
        fn, codomain = q, q.cod.points if codomain is None else codomain
    elif isinstance(q, SetMap):
        fn, codomain = q, q.codomain if codomain is None else codomain
    else:
        fn = q.__getitem__ if hasattr(q, "__getitem__") else q
        if codomain is None:
            codomain = tuple(dict.fromkeys(fn(a) for a in space.points))
    codomain = tuple(codomain)
    if {fn(a) for a in space.points} != set(codomain):
        raise SpaceError("the map is not surjective")
    ps = final_structure(codomain, [(space, fn)])
    top = final_topology(codomain, [(space, fn)])
    qmap = SpaceMap(space, top, tuple(fn(a) for a in space.points))
    return KentVerdict(ps, top, ps == top, is_biquotient(qmap))


def check_pc_product(X: PseudoSpace, Y: PseudoSpace) -> bool:
    """``πC(X × Y)`` against ``πC X × πC Y`` under ``[(x, y)] ↦ ([x], [y])``."""
    cxy = path_components(product([X, Y]))
    cx, cy = path_components(X), path_components(Y)
    rhs = product([cx.quotient, cy.quotient])
    image = {}
    for (x, y), cls in zip(cxy.source.points, cxy.projection.images):
        val = (cx.class_of(x), cy.class_of(y))
        if image.setdefault(cls, val) != val:
            return False
    if len(set(image.values())) != len(image) or set(image.values()) != set(rhs.points):
        return False
    phi = SpaceMap(cxy.quotient, rhs, tuple(image[c] for c in cxy.quotient.points))
    ix = phi.idx
    return bool(np.array_equal(rhs.adj[np.ix_(ix, ix)], cxy.quotient.adj))


def component_topology(space: PseudoSpace) -> PseudoSpace:
    """Quotient topology on the component representatives, computed from open sets."""
    cq = path_components(space)
    return final_topology(cq.quotient.points, [(space, cq.projection)])


def check_pc_lift(space: PseudoSpace) -> bool:
    """Reflecting the pseudotopological component quotient gives the topological one."""
    if not space.is_topological:
        raise SpaceError("the lift square is stated for topological spaces")
    return reflect_top(path_components(space).quotient) == component_topology(space)


@dataclass(frozen=True, eq=False)
class InducedMultiplication:
    components: ComponentQuotient
    mu: SpaceMap
    continuous: bool


def induced_multiplication(space: PseudoSpace, m: SpaceMap) -> InducedMultiplication:
    """``μ([a], [b]) = [m(a, b)]`` on the component quotient."""
    if m.dom != product([space, space]) or m.cod != space:
        raise SpaceError("multiplication must be a map X × X -> X")
    if not is_continuous(m):
        raise SpaceError("multiplication must be continuous")
    cq = path_components(space)
    table: dict = {}
    for (a, b), c in zip(m.dom.points, m.images):
        key = (cq.class_of(a), cq.class_of(b))
        val = cq.class_of(c)
        if table.setdefault(key, val) != val:
            raise AssertionError(f"induced multiplication is ill-defined at {key!r}")
    dom = product([cq.quotient, cq.quotient])
    mu = SpaceMap(dom, cq.quotient, tuple(table[p] for p in dom.points))
    return InducedMultiplication(cq, mu, is_continuous(mu))
