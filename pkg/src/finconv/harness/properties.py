"""Registered properties for the mining engine.

A property turns an *instance* (an ordered dict of named spaces, maps, covers
and groups) into ``None`` when it holds or a violation message when it does
not.  Instances come from a deterministic sampler ``sample(rng, max_points)``
and, where feasible, an exhaustive stream ``exhaustive(max_points)``.
Because instances are documents, every violation can be written out and
replayed from the file alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import numpy as np

from .. import components as pc
from .. import exponentials as ex
from .. import filters as fl
from .. import groups as gr
from .. import interval_formulas as iv
from .. import pasting as pa
from .. import spaces as sp
from . import instances as ins
from .docformat import parse, serialize

Instance = dict
Check = Callable[[Instance], Optional[str]]


@dataclass(frozen=True)
class Property:
    name: str
    description: str
    check: Check
    sample: Callable[[np.random.Generator, int], Instance]
    exhaustive: Optional[Callable[[int], Iterator[Instance]]] = None
    default_max_points: int = 4
    exhaustive_max_points: int = 3


REGISTRY: dict[str, Property] = {}


def register(name: str, description: str, sample, exhaustive=None, default_max_points: int = 4,
             exhaustive_max_points: int = 3):
    def deco(check: Check) -> Check:
        if name in REGISTRY:
            raise ValueError(f"property {name!r} registered twice")
        REGISTRY[name] = Property(name, description, check, sample, exhaustive, default_max_points,
                                  exhaustive_max_points)
        return check
    return deco


def _spaces_upto(max_points: int, kind: str = "all", min_points: int = 1) -> Iterator[sp.PseudoSpace]:
    for n in range(min_points, max_points + 1):
        yield from ins.enumerate_spaces(n, kind, bound=max(max_points, ins.DEFAULT_BOUND))


def _discrete(n: int) -> sp.PseudoSpace:
    return sp.discrete(range(n))


# filters

def _sample_functoriality(rng, max_points):
    X = _discrete(int(rng.integers(1, max_points + 1)))
    Y = _discrete(int(rng.integers(1, min(max_points, 3) + 1)))
    Z = _discrete(int(rng.integers(1, min(max_points, 3) + 1)))
    return {"X": X, "Y": Y, "Z": Z, "g": ins.random_function(rng, X, Y), "f": ins.random_function(rng, Y, Z)}


def _exhaust_functoriality(max_points):
    for n in range(1, max_points + 1):
        for m in range(1, min(max_points, 3) + 1):
            for k in range(1, min(max_points, 3) + 1):
                X, Y, Z = _discrete(n), _discrete(m), _discrete(k)
                for gi in ins.all_functions(X.points, Y.points):
                    g = sp.SpaceMap(X, Y, gi)
                    for fi in ins.all_functions(Y.points, Z.points):
                        yield {"X": X, "Y": Y, "Z": Z, "g": g, "f": sp.SpaceMap(Y, Z, fi)}


@register("filter_functoriality", "pushforward is functorial and preserves (principal) ultrafilters",
          _sample_functoriality, _exhaust_functoriality, exhaustive_max_points=4)
def check_filter_functoriality(inst):
    f, g = inst["f"].set_map, inst["g"].set_map
    fg = f.compose(g)
    for F in fl.all_filters(g.domain):
        lhs = fl.pushforward(fg, F)
        if lhs != fl.pushforward(f, fl.pushforward(g, F)):
            return f"(f∘g)_*F != f_*(g_*F) for F={F!r}"
        if F.is_ultrafilter and not lhs.is_ultrafilter:
            return f"pushforward of the ultrafilter {F!r} is not an ultrafilter"
    return None


def _sample_pullback(rng, max_points):
    X = _discrete(int(rng.integers(1, max_points + 1)))
    Y = _discrete(int(rng.integers(1, min(max_points, 3) + 1)))
    return {"X": X, "Y": Y, "f": ins.random_function(rng, X, Y)}


def _exhaust_pullback(max_points):
    for n in range(1, max_points + 1):
        for m in range(1, min(max_points, 3) + 1):
            X, Y = _discrete(n), _discrete(m)
            for fi in ins.all_functions(X.points, Y.points):
                yield {"X": X, "Y": Y, "f": sp.SpaceMap(X, Y, fi)}


@register("pullback_lemma", "F ⊆ f_* f^* F whenever the pullback exists, with equality on ultrafilters",
          _sample_pullback, _exhaust_pullback, exhaustive_max_points=4)
def check_pullback_lemma(inst):
    f = inst["f"].set_map
    image = frozenset(f.images)
    for F in fl.all_filters(f.codomain):
        pb = fl.pullback(f, F)
        defined = bool(F.core & image)
        if (pb is not fl.UNDEFINED) != defined:
            return f"pullback definedness wrong for {F!r}"
        if pb is fl.UNDEFINED:
            continue
        back = fl.pushforward(f, pb)
        if not back.refines(F):
            return f"F ⊄ f_*f^*F for F={F!r}"
        if F.is_ultrafilter and (back != F or image not in F):
            return f"ultrafilter {F!r} is not recovered exactly"
    return None


# spaces

def _sample_space(rng, max_points):
    return {"X": ins.random_space(rng, max_points, min_points=0)}


def _exhaust_space(max_points):
    for X in _spaces_upto(max_points, min_points=0):
        yield {"X": X}


@register("reflexive", "every construction returns a reflexive structure", _sample_space, _exhaust_space)
def check_reflexive(inst):
    X = inst["X"]
    built = [sp.reflect_top(X), sp.product([X, X]), sp.coproduct([X, X]),
             sp.subspace(X, X.points[::2]), pc.path_components(X).quotient,
             ex.exponential(X, sp.sierpinski()).structure]
    if X.n:
        built.append(sp.quotient(X, {p: 0 for p in X.points}, (0,)))
    for s in built:
        if not bool(np.all(np.diag(s.adj))):
            return f"non-reflexive construction {s!r}"
    return None


def _sample_initial(rng, max_points):
    n = int(rng.integers(1, min(max_points, 3) + 1))
    X = _discrete(n)
    inst = {"X": X}
    for k in range(int(rng.integers(0, 3))):
        Y = ins.random_space(rng, 3, labels=[f"y{k}_{i}" for i in range(3)])
        inst[f"Y{k}"] = Y
        inst[f"f{k}"] = ins.random_function(rng, X, Y)
    return inst


def _sinks(inst):
    return [(m, m.cod) for key, m in inst.items() if isinstance(m, sp.SpaceMap)]


@register("initial_greatest", "initial structure is the greatest making all maps continuous",
          _sample_initial)
def check_initial_greatest(inst):
    X = inst["X"]
    sinks = _sinks(inst)
    S = sp.initial_structure(X.points, sinks)
    ok = lambda T: all(sp.is_continuous(sp.retarget(m, dom=T)) for m, _ in sinks)  # noqa: E731
    if not ok(S):
        return "a map is discontinuous for the initial structure"
    for i, j in zip(*np.nonzero(~S.adj)):
        bigger = S.adj.copy()
        bigger[i, j] = True
        if ok(sp.PseudoSpace(X.points, bigger)):
            return f"adding {X.points[i]!r}>{X.points[j]!r} keeps every map continuous"
    return None


def _sample_final(rng, max_points):
    X = ins.random_space(rng, max_points)
    k = int(rng.integers(1, X.n + 1))
    Q = _discrete(k)
    return {"X": X, "Q": Q, "q": sp.SpaceMap(X, Q, ins.random_surjection_images(rng, X.n, k))}


@register("final_least", "final structure is the least making the map continuous", _sample_final)
def check_final_least(inst):
    X, q = inst["X"], inst["q"]
    S = sp.final_structure(q.cod.points, [(X, q)])
    if not sp.is_continuous(sp.retarget(q, cod=S)):
        return "the map is discontinuous into its final structure"
    for i, j in zip(*np.nonzero(S.adj)):
        if i == j:
            continue
        smaller = S.adj.copy()
        smaller[i, j] = False
        if sp.is_continuous(sp.retarget(q, cod=sp.PseudoSpace(S.points, smaller))):
            return f"removing {S.points[i]!r}>{S.points[j]!r} keeps the map continuous"
    return None


def _sample_two_structures(rng, max_points):
    X = ins.random_space(rng, max_points, min_points=0)
    extra = ins.random_space(rng, X.n, min_points=X.n)
    return {"X": X, "W": sp.lattice_join([X, sp.PseudoSpace(X.points, extra.adj)])}


def _exhaust_two_structures(max_points):
    for n in range(0, max_points + 1):
        structures = list(ins.enumerate_spaces(n))
        for X in structures:
            for W in structures:
                if sp.is_finer(X, W):
                    yield {"X": X, "W": W}


@register("reflector", "R is idempotent, monotone, and id: X -> RX is continuous", _sample_two_structures,
          _exhaust_two_structures)
def check_reflector(inst):
    X, W = inst["X"], inst["W"]
    RX = sp.reflect_top(X)
    if sp.reflect_top(RX) != RX or not RX.is_topological:
        return "R is not idempotent"
    if not sp.is_continuous(sp.SpaceMap(X, RX, X.points)):
        return "id: X -> RX is discontinuous"
    if not sp.is_finer(RX, sp.reflect_top(W)):
        return "R is not monotone"
    return None


def _sample_universal(rng, max_points):
    X = ins.random_space(rng, max_points)
    Y = ins.random_space(rng, max_points, topological=True, labels=[f"y{i}" for i in range(max_points)])
    return {"X": X, "Y": Y, "f": ins.random_continuous(rng, X, Y)}


def _exhaust_universal(max_points):
    for X in _spaces_upto(max_points):
        for Y in _spaces_upto(max_points, "topological"):
            for f in ex.continuous_maps(X, Y):
                yield {"X": X, "Y": Y, "f": f}


@register("reflector_universal", "continuous X -> Y with Y topological stays continuous on RX",
          _sample_universal, _exhaust_universal, default_max_points=3)
def check_reflector_universal(inst):
    f = inst["f"]
    if not sp.is_continuous(f):
        return "instance map is not continuous"
    if not sp.is_continuous(sp.retarget(f, dom=sp.reflect_top(f.dom))):
        return "f: RX -> Y is discontinuous"
    return None


def _sample_initial_top(rng, max_points):
    X = _discrete(int(rng.integers(1, max_points + 1)))
    inst = {"X": X}
    for k in range(int(rng.integers(1, 4))):
        Y = ins.random_space(rng, max_points, topological=True, labels=[f"y{k}_{i}" for i in range(max_points)])
        inst[f"Y{k}"] = Y
        inst[f"f{k}"] = ins.random_function(rng, X, Y)
    return inst


@register("initial_preserves_top", "initial structures from maps into topological spaces are topological",
          _sample_initial_top)
def check_initial_preserves_top(inst):
    S = sp.initial_structure(inst["X"].points, _sinks(inst))
    return None if S.is_topological else f"initial structure {S!r} is not transitive"


@register("final_sink", "R(final structure) equals the final topology along the reflected source",
          _sample_final)
def check_final_sink(inst):
    X, q = inst["X"], inst["q"]
    lhs = sp.reflect_top(sp.final_structure(q.cod.points, [(X, q)]))
    rhs = sp.final_topology(q.cod.points, [(X, q)])
    return None if lhs == rhs else f"R(final) = {lhs!r} but final topology = {rhs!r}"


# exponentials

def _sample_triple(rng, max_points):
    return {
        "Z": ins.random_space(rng, max_points, labels=[f"z{i}" for i in range(max_points)]),
        "X": ins.random_space(rng, max_points),
        "Y": ins.random_space(rng, max_points, labels=[f"y{i}" for i in range(max_points)]),
    }


def exp_law_violation(Z: sp.PseudoSpace, X: sp.PseudoSpace, Y: sp.PseudoSpace) -> Optional[str]:
    ms = ex.exponential(X, Y)
    ZX = sp.product([Z, X])
    lhs = ex.continuous_maps(ZX, Y)
    rhs = ex.continuous_maps(Z, ms.structure)
    if len(lhs) != len(rhs):
        return f"|hom(Z×X,Y)| = {len(lhs)} but |hom(Z,Y^X)| = {len(rhs)}"
    curried = set()
    for h in lhs:
        k = ex.curry(h, Z, X, ms)
        if not sp.is_continuous(k):
            return f"curry({h!r}) is discontinuous"
        if ex.uncurry(k, ms) != h:
            return f"uncurry(curry(h)) != h for {h!r}"
        curried.add(k.images)
    if curried != {k.images for k in rhs}:
        return "curry is not onto hom(Z, Y^X)"
    for k in rhs:
        h = ex.uncurry(k, ms)
        if not sp.is_continuous(h) or ex.curry(h, Z, X, ms) != k:
            return f"curry(uncurry(k)) != k for {k!r}"
    return None


@register("exp_law", "curry/uncurry is a bijection hom(Z×X, Y) ≅ hom(Z, Y^X)", _sample_triple,
          default_max_points=3)
def check_exp_law(inst):
    return exp_law_violation(inst["Z"], inst["X"], inst["Y"])


def _sample_pair(rng, max_points):
    return {"X": ins.random_space(rng, max_points),
            "Y": ins.random_space(rng, max_points, labels=[f"y{i}" for i in range(max_points)])}


@register("ev_continuous", "evaluation Y^X × X -> Y is continuous", _sample_pair)
def check_ev_continuous(inst):
    X, Y = inst["X"], inst["Y"]
    ms = ex.exponential(X, Y)
    dom = sp.product([ms.structure, X])
    ev = sp.SpaceMap(dom, Y, tuple(h[X.index(x)] for h, x in dom.points))
    return None if sp.is_continuous(ev) else "evaluation is discontinuous"


def _sample_top_pair(rng, max_points):
    return {"X": ins.random_space(rng, max_points, topological=True),
            "Y": ins.random_space(rng, max_points, topological=True, labels=[f"y{i}" for i in range(max_points)])}


def _exhaust_top_pair(max_points):
    for X in ins.enumerate_spaces(max_points, "topological"):
        for Y in ins.enumerate_spaces(max_points, "topological"):
            yield {"X": X, "Y": sp.PseudoSpace(tuple(f"y{i}" for i in Y.points), Y.adj)}


@register("exp_transitive", "exponentials of topological spaces are topological",
          _sample_top_pair, _exhaust_top_pair, default_max_points=3)
def check_exp_transitive(inst):
    E = ex.exponential(inst["X"], inst["Y"]).structure
    return None if E.is_topological else "exponential structure is not transitive"


@register("exp_products", "(Y×Z)^X ≅ Y^X × Z^X canonically", _sample_triple, default_max_points=3)
def check_exp_products(inst):
    return None if ex.exp_product_iso(inst["X"], inst["Y"], inst["Z"]) else "canonical map is not an isomorphism"


@register("exp_filter_oracle", "exponential edge rule agrees with the filter formulation", _sample_pair,
          default_max_points=3)
def check_exp_filter_oracle(inst):
    X, Y = inst["X"], inst["Y"]
    ms = ex.exponential(X, Y)
    for g in ms.maps:
        for f in ms.maps:
            if ex.exp_edge(g, f) != ex.exp_edge_via_filters(ms, g, f):
                return f"edge rule disagrees with filters at {g!r} -> {f!r}"
            if ex.exp_edge(g, f) != ms.structure.conv(ms.label_of(g), ms.label_of(f)):
                return "stored structure disagrees with the edge rule"
    return None


# pasting

def _sample_pasting(rng, max_points):
    X = ins.random_space(rng, max_points)
    Y = ins.random_space(rng, max_points, labels=[f"y{i}" for i in range(max_points)])
    kind = ("open", "closed", "any")[int(rng.integers(0, 3))]
    C = ins.random_cover(rng, X, kind)
    # a map continuous on every piece, possibly not globally
    f = ins.random_continuous(rng, pa.piecewise_structure(C), Y)
    return {"X": X, "Y": Y, "C": C, "f": sp.retarget(f, dom=X)}


@register("pasting", "open or closed covers glue piecewise-continuous maps into continuous maps",
          _sample_pasting, default_max_points=6)
def check_pasting(inst):
    C, f = inst["C"], inst["f"]
    v = pa.check_pasting(C, pa.pieces_of(C, f), f.cod)
    return "glued map is discontinuous although the hypotheses hold" if v.violates_lemma else None


def _sample_open_cover(rng, max_points):
    X = ins.random_space(rng, max_points)
    return {"X": X, "C": ins.random_cover(rng, X, "open"), "D": ins.random_cover(rng, X, "open")}


@register("pasting_refinement", "refining an open cover by open pieces keeps it AllOpen", _sample_open_cover,
          default_max_points=6)
def check_pasting_refinement(inst):
    C, D = inst["C"], inst["D"]
    refined = pa.Cover(C.space, tuple(c & d for c in C.pieces for d in D.pieces if c & d))
    if pa.classify_cover(C) is not pa.CoverKind.ALL_OPEN:
        return "open cover not classified AllOpen"
    return None if pa.classify_cover(refined) is pa.CoverKind.ALL_OPEN else "refinement lost AllOpen"


# components

@register("pc_functorial", "πC f ∘ q_X = q_Y ∘ f for continuous f", _sample_universal)
def check_pc_functorial(inst):
    f = inst["f"]
    try:
        pc.induced_map(f)
    except AssertionError as exc:
        return str(exc) or "component square does not commute"
    return None


def _exhaust_pair(max_points):
    for X in _spaces_upto(max_points):
        for Y in _spaces_upto(max_points):
            yield {"X": X, "Y": sp.PseudoSpace(tuple(f"y{i}" for i in Y.points), Y.adj)}


@register("pc_product", "πC(X×Y) ≅ πC X × πC Y", _sample_pair, _exhaust_pair, default_max_points=5)
def check_pc_product(inst):
    return None if pc.check_pc_product(inst["X"], inst["Y"]) else "component functor does not preserve the product"


def _sample_top(rng, max_points):
    return {"X": ins.random_space(rng, max_points, topological=True)}


def _exhaust_top(max_points):
    for X in _spaces_upto(max_points, "topological"):
        yield {"X": X}


@register("pc_topological", "for topological X: πC^ps X is topological, equals πC^top X, q_X is biquotient",
          _sample_top, _exhaust_top, exhaustive_max_points=4)
def check_pc_topological(inst):
    X = inst["X"]
    cq = pc.path_components(X)
    top = pc.component_topology(X)
    if not cq.quotient.is_topological:
        return "πC^ps X is not topological"
    if cq.quotient != top or not pc.check_pc_lift(X):
        return "πC^ps X differs from πC^top X"
    if not pc.is_biquotient(sp.retarget(cq.projection, cod=top)):
        return "q_X is not biquotient"
    return None


@register("pc_discrete", "component quotients are discrete", _sample_space, _exhaust_space)
def check_pc_discrete(inst):
    q = pc.path_components(inst["X"]).quotient
    return None if q == sp.discrete(q.points) else "component quotient is not discrete"


def _sample_kent(rng, max_points):
    X = ins.random_space(rng, max_points, topological=True)
    k = int(rng.integers(1, min(X.n, 3) + 1))
    Q = _discrete(k)
    return {"X": X, "Q": Q, "q": sp.SpaceMap(X, Q, ins.random_surjection_images(rng, X.n, k))}


def _exhaust_kent(max_points):
    for X in _spaces_upto(max_points, "topological"):
        for k in range(1, min(X.n, 3) + 1):
            Q = _discrete(k)
            for images in ins.surjections(X.points, Q.points):
                yield {"X": X, "Q": Q, "q": sp.SpaceMap(X, Q, images)}


@register("kent", "final pseudotopology = final topology iff the quotient map is biquotient",
          _sample_kent, _exhaust_kent, exhaustive_max_points=4)
def check_kent(inst):
    v = pc.check_kent(inst["X"], inst["q"])
    return None if v.agree else f"structures coincide={v.coincide} but biquotient={v.biquotient}"


def _sample_biquotient(rng, max_points):
    X = ins.random_space(rng, max_points, topological=True)
    k = int(rng.integers(1, X.n + 1))
    images = ins.random_surjection_images(rng, X.n, k)
    Q = sp.final_topology(range(k), [(X, dict(zip(X.points, images)))])
    return {"X": X, "Q": Q, "q": sp.SpaceMap(X, Q, images)}


@register("biquotient_oracle", "minimal-open biquotient test agrees with enumeration of all open covers",
          _sample_biquotient, default_max_points=4)
def check_biquotient_oracle(inst):
    q = inst["q"]
    fast, slow = pc.is_biquotient(q), pc.is_biquotient(q, brute_force=True)
    return None if fast == slow else f"minimal-open test says {fast}, cover enumeration says {slow}"


def _sample_multiplication(rng, max_points):
    X = ins.random_space(rng, max_points)
    return {"X": X, "m": ins.random_continuous(rng, sp.product([X, X]), X)}


@register("induced_mult", "multiplications induce continuous maps on components", _sample_multiplication)
def check_induced_mult(inst):
    r = pc.induced_multiplication(inst["X"], inst["m"])
    return None if r.continuous else "induced multiplication is discontinuous"


# groups

def sample_group_structure(rng, G: gr.ConvergenceGroup, compatible: bool) -> gr.ConvergenceGroup:
    """A random structure on ``G``; ``compatible`` closes it to a pseudotopological group."""
    n = G.order
    adj = rng.random((n, n)) < rng.random() * (0.5 if compatible else 1.0)
    if compatible:
        return G.with_space(gr.pstop_closure(G, adj))
    return G.with_space(sp.PseudoSpace(G.space.points, adj))


def _sample_group(rng, max_points):
    groups = [G for _, G in gr.small_groups(min(max_points, 6))]
    G = groups[int(rng.integers(0, len(groups)))]
    return {"G": sample_group_structure(rng, G, compatible=bool(rng.integers(0, 2)))}


@register("group_remark", "quasitopological ∧ pseudotopological group ⟺ topological group",
          _sample_group, default_max_points=6)
def check_group_remark(inst):
    G = inst["G"]
    lhs = gr.is_quasitop_group(G) and gr.is_pstop_group(G)
    return None if lhs == gr.is_top_group(G) else f"quasitop∧pstop={lhs} but top={gr.is_top_group(G)}"


@register("h_group", "pseudotopological groups are H-groups", _sample_group, default_max_points=6)
def check_h_group(inst):
    G = inst["G"]
    if not gr.is_pstop_group(G):
        return None
    report = gr.h_group_report(G)
    return None if report.ok else f"H-group clauses failed: {report.as_dict()}"


@register("group_components", "components of a pseudotopological group form a pseudotopological group",
          _sample_group, default_max_points=6)
def check_group_components(inst):
    G = inst["G"]
    if not gr.is_pstop_group(G):
        return None
    r = pc.induced_multiplication(G.space, G.mult_map)
    if not r.continuous:
        return "induced multiplication is discontinuous"
    Q = r.components.quotient
    table = dict(zip(r.mu.dom.points, r.mu.images))
    try:
        H = gr.ConvergenceGroup.from_table(Q, table)
    except gr.GroupError as exc:
        return f"components do not form a group: {exc}"
    return None if gr.is_pstop_group(H) else "component group is not a pseudotopological group"


# formulas and harness

def _sample_nothing(rng, max_points):
    return {}


def _exhaust_nothing(max_points):
    yield {}


@register("schedules", "all schedule identities hold exactly", _sample_nothing, _exhaust_nothing)
def check_schedules(inst):
    failed = [i.name for i in iv.check_boundaries() if not i.passed]
    return None if not failed else f"failed identities: {failed}"


@register("roundtrip", "parse(serialize(doc)) reproduces the document", _sample_pasting, default_max_points=6)
def check_roundtrip(inst):
    from .mining import instance_document
    text = serialize(instance_document(inst))
    again = serialize(parse(text))
    return None if again == text else "serialize∘parse is not the identity"


def exhaustive_supported(name: str) -> bool:
    return REGISTRY[name].exhaustive is not None


