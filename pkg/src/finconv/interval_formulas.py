"""Exact reparametrization schedules for the loop-space H-group homotopies.

Each schedule ``h(s, t)`` maps ``[0,1]^2`` to ``[0,1]``; a homotopy of loops is
``(l, s, t) ↦ l(h(s, t))``.  The unit schedule ``phi`` deforms ``l·e`` into
``l``, ``psi`` deforms ``l·l⁻¹`` into the constant loop and ``chi`` deforms
``(l·l')·l''`` into ``l·(l'·l'')``.  The ``*_max`` variants are the
mirrored schedules for ``e·l`` and ``l⁻¹·l``.

Pieces are written once as expressions over a generic number type, so the
same code evaluates exactly on :class:`~fractions.Fraction` values and
symbolically on sympy symbols.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import sympy


def _is_symbolic(*xs) -> bool:
    return any(isinstance(x, sympy.Basic) for x in xs)


def _min(a, b):
    return sympy.Min(a, b) if _is_symbolic(a, b) else min(a, b)


def _max(a, b):
    return sympy.Max(a, b) if _is_symbolic(a, b) else max(a, b)


def _half(*xs):
    return sympy.Rational(1, 2) if _is_symbolic(*xs) else Fraction(1, 2)


@dataclass(frozen=True)
class Piece:
    lo: Callable    # s -> lower t bound
    hi: Callable    # s -> upper t bound
    expr: Callable  # (s, t) -> value
    text: str


@dataclass(frozen=True)
class Schedule:
    tag: str
    pieces: tuple

    def piece_for(self, s, t) -> Piece:
        for p in self.pieces:
            if p.lo(s) <= t <= p.hi(s):
                return p
        raise ValueError(f"no piece of {self.tag} contains ({s}, {t})")


_ZERO = lambda s: 0  # noqa: E731
_ONE = lambda s: 1  # noqa: E731

PHI = Schedule("phi", (Piece(_ZERO, _ONE, lambda s, t: (1 - s) * _min(2 * t, 1) + s * t,
                             "(1-s)·min(2t,1) + st"),))
PHI_MAX = Schedule("phi_max", (Piece(_ZERO, _ONE, lambda s, t: (1 - s) * _max(2 * t - 1, 0) + s * t,
                                     "(1-s)·max(2t-1,0) + st"),))
PSI = Schedule("psi", (Piece(_ZERO, _ONE, lambda s, t: 2 * (1 - s) * _min(t, 1 - t),
                             "2(1-s)·min(t,1-t)"),))
PSI_MAX = Schedule("psi_max", (Piece(_ZERO, _ONE, lambda s, t: s + (1 - s) * (2 * _max(t, 1 - t) - 1),
                                     "s + (1-s)(2·max(t,1-t) - 1)"),))
CHI = Schedule("chi", (
    Piece(_ZERO, lambda s: (1 + s) / 4, lambda s, t: t / (1 + s), "t/(1+s)"),
    Piece(lambda s: (1 + s) / 4, lambda s: (2 + s) / 4, lambda s, t: t - s / 4, "t - s/4"),
    Piece(lambda s: (2 + s) / 4, _ONE, lambda s, t: _half(s, t) + (4 * t - 2 - s) / (4 - 2 * s),
          "1/2 + (4t-2-s)/(4-2s)"),
))

SCHEDULES = {sch.tag: sch for sch in (PHI, PHI_MAX, PSI, PSI_MAX, CHI)}


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point input is not accepted; pass a fraction such as '1/3'")
    return Fraction(x)


def evaluate(schedule: Schedule | str, s, t) -> Fraction:
    """Exact value of a schedule at ``(s, t)`` in the unit square."""
    sch = SCHEDULES[schedule] if isinstance(schedule, str) else schedule
    s, t = to_fraction(s), to_fraction(t)
    if not (0 <= s <= 1 and 0 <= t <= 1):
        raise ValueError(f"({s}, {t}) is outside the unit square")
    return Fraction(sch.piece_for(s, t).expr(s, t))


def grid(step: int = 64) -> list[Fraction]:
    return [Fraction(k, step) for k in range(step + 1)]


@dataclass(frozen=True)
class Identity:
    name: str
    passed: bool
    detail: str = ""


def _grid_identity(name: str, sch: Schedule, fn: Callable, expected: Callable, pts: Sequence[Fraction]) -> Identity:
    for u in pts:
        s, t = fn(u)
        got = evaluate(sch, s, t)
        want = Fraction(expected(u))
        if got != want:
            return Identity(name, False, f"at ({s}, {t}): {got} != {want}")
    return Identity(name, True, f"{len(pts)} grid points")


def _symbolic_zero(expr) -> bool:
    return sympy.simplify(expr) == 0


def _piece_boundaries(sch: Schedule) -> list[Identity]:
    """Consecutive pieces share their endpoints and agree there, symbolically."""
    s = sympy.Symbol("s")
    out = []
    first, last = sch.pieces[0], sch.pieces[-1]
    out.append(Identity(f"{sch.tag}: pieces start at t=0", _symbolic_zero(sympy.sympify(first.lo(s)))))
    out.append(Identity(f"{sch.tag}: pieces end at t=1", _symbolic_zero(sympy.sympify(last.hi(s)) - 1)))
    for k, (p, q) in enumerate(zip(sch.pieces, sch.pieces[1:])):
        b = sympy.sympify(p.hi(s))
        out.append(Identity(f"{sch.tag}: pieces {k},{k + 1} share the breakpoint {b}",
                            _symbolic_zero(b - sympy.sympify(q.lo(s)))))
        out.append(Identity(f"{sch.tag}: pieces {k},{k + 1} agree at t={b}",
                            _symbolic_zero(p.expr(s, b) - q.expr(s, b))))
    return out


def _lo_le_hi(sch: Schedule, pts: Sequence[Fraction]) -> Identity:
    # bounds are affine in s, so the grid endpoints decide
    ok = all(p.lo(s) <= p.hi(s) for p in sch.pieces for s in pts)
    return Identity(f"{sch.tag}: piece intervals are nonempty", ok)


def _in_unit_interval(sch: Schedule, pts: Sequence[Fraction]) -> Identity:
    for s in pts:
        for t in pts:
            v = evaluate(sch, s, t)
            if not 0 <= v <= 1:
                return Identity(f"{sch.tag}: values lie in [0,1]", False, f"({s}, {t}) -> {v}")
    return Identity(f"{sch.tag}: values lie in [0,1]", True)


def _grid_continuity(sch: Schedule, pts: Sequence[Fraction]) -> Identity:
    """Where pieces overlap (breakpoints on the grid) every containing piece gives the same value."""
    name = f"{sch.tag}: overlapping pieces agree on the grid"
    for s in pts:
        for t in pts:
            vals = {Fraction(p.expr(s, t)) for p in sch.pieces if p.lo(s) <= t <= p.hi(s)}
            if len(vals) != 1:
                return Identity(name, False, f"({s}, {t}) -> {sorted(vals)}")
    return Identity(name, True)


def _chi_increasing(pts: Sequence[Fraction]) -> list[Identity]:
    s = sympy.Symbol("s")
    t = sympy.Symbol("t")
    out = []
    for k, p in enumerate(CHI.pieces):
        slope = sympy.diff(p.expr(s, t), t)
        # slope depends on s only; positivity on [0,1] checked at the endpoints and symbolically
        positive = all(slope.subs(s, v) > 0 for v in (0, 1)) and not [
            r for r in sympy.solve(sympy.Eq(slope, 0), s) if r.is_real and 0 <= r <= 1]
        out.append(Identity(f"chi: piece {k} has positive t-slope {slope}", bool(positive)))
    strict = True
    bad = ""
    for sv in pts:
        vals = [evaluate(CHI, sv, tv) for tv in pts]
        if any(a >= b for a, b in zip(vals, vals[1:])):
            strict, bad = False, f"s={sv}"
            break
    out.append(Identity("chi: strictly increasing in t on the grid", strict, bad))
    return out


def check_boundaries(step: int = 64) -> list[Identity]:
    """Every endpoint identity the schedules must realize, exactly."""
    pts = grid(step)
    half = Fraction(1, 2)
    res: list[Identity] = []

    def edge(name, sch, fn, expected):
        res.append(_grid_identity(name, sch, fn, expected, pts))

    edge("phi(s,0) = 0", PHI, lambda u: (u, 0), lambda u: 0)
    edge("phi(s,1) = 1", PHI, lambda u: (u, 1), lambda u: 1)
    edge("phi(1,t) = t", PHI, lambda u: (1, u), lambda u: u)
    edge("phi(0,t) = min(2t,1)", PHI, lambda u: (0, u), lambda u: min(2 * u, 1))
    edge("phi_max(s,0) = 0", PHI_MAX, lambda u: (u, 0), lambda u: 0)
    edge("phi_max(s,1) = 1", PHI_MAX, lambda u: (u, 1), lambda u: 1)
    edge("phi_max(1,t) = t", PHI_MAX, lambda u: (1, u), lambda u: u)
    edge("phi_max(0,t) = max(2t-1,0)", PHI_MAX, lambda u: (0, u), lambda u: max(2 * u - 1, 0))
    edge("psi(s,0) = 0", PSI, lambda u: (u, 0), lambda u: 0)
    edge("psi(s,1) = 0", PSI, lambda u: (u, 1), lambda u: 0)
    edge("psi(1,t) = 0", PSI, lambda u: (1, u), lambda u: 0)
    edge("psi(0,t) = 2min(t,1-t)", PSI, lambda u: (0, u), lambda u: 2 * min(u, 1 - u))
    edge("psi_max(s,0) = 1", PSI_MAX, lambda u: (u, 0), lambda u: 1)
    edge("psi_max(s,1) = 1", PSI_MAX, lambda u: (u, 1), lambda u: 1)
    edge("psi_max(1,t) = 1", PSI_MAX, lambda u: (1, u), lambda u: 1)
    edge("psi_max(0,t) = max(1-2t,2t-1)", PSI_MAX, lambda u: (0, u), lambda u: max(1 - 2 * u, 2 * u - 1))
    edge("chi(s,0) = 0", CHI, lambda u: (u, 0), lambda u: 0)
    edge("chi(s,1) = 1", CHI, lambda u: (u, 1), lambda u: 1)
    edge("chi(0,t) = t", CHI, lambda u: (0, u), lambda u: u)
    edge("chi(1,t) reassociates", CHI, lambda u: (1, u),
         lambda u: u / 2 if u <= half else (u - Fraction(1, 4) if u <= Fraction(3, 4) else 2 * u - 1))

    s, t = sympy.symbols("s t")
    zero = sympy.Integer(0)
    for name, expr in [
        ("phi(s,1) = 1 symbolically", PHI.pieces[0].expr(s, 1) - 1),
        ("phi(s,0) = 0 symbolically", PHI.pieces[0].expr(s, 0)),
        ("chi(s,0) = 0 symbolically", CHI.pieces[0].expr(s, 0)),
        ("chi(s,1) = 1 symbolically", CHI.pieces[2].expr(s, 1) - 1),
        ("chi(0,t) = t on piece 0", CHI.pieces[0].expr(zero, t) - t),
        ("chi(0,t) = t on piece 1", CHI.pieces[1].expr(zero, t) - t),
        ("chi(0,t) = t on piece 2", CHI.pieces[2].expr(zero, t) - t),
        ("psi(s,0) = 0 symbolically", PSI.pieces[0].expr(s, 0)),
        ("psi(s,1) = 0 symbolically", PSI.pieces[0].expr(s, 1)),
    ]:
        res.append(Identity(name, _symbolic_zero(expr)))

    for sch in SCHEDULES.values():
        res.extend(_piece_boundaries(sch))
        res.append(_lo_le_hi(sch, pts))
        res.append(_in_unit_interval(sch, pts))
        res.append(_grid_continuity(sch, pts))
    res.extend(_chi_increasing(pts))
    return res


# Piecewise-linear loops with rational breakpoints, to show the schedules at work.

@dataclass(frozen=True)
class PLPath:
    """Piecewise-linear path ``[0,1] -> Q^d`` through ``nodes[(t_k, point_k)]``."""

    nodes: tuple

    def __post_init__(self):
        nodes = tuple((Fraction(t), tuple(Fraction(c) for c in p)) for t, p in self.nodes)
        ts = [t for t, _ in nodes]
        if len(nodes) < 2 or ts[0] != 0 or ts[-1] != 1 or any(a >= b for a, b in zip(ts, ts[1:])):
            raise ValueError("breakpoints must increase strictly from 0 to 1")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def constant(cls, p: Iterable) -> "PLPath":
        p = tuple(p)
        return cls(((0, p), (1, p)))

    def __call__(self, t) -> tuple:
        t = to_fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("parameter outside [0,1]")
        for (t0, p0), (t1, p1) in zip(self.nodes, self.nodes[1:]):
            if t0 <= t <= t1:
                lam = (t - t0) / (t1 - t0)
                return tuple(a + lam * (b - a) for a, b in zip(p0, p1))
        raise AssertionError("unreachable")

    @property
    def start(self) -> tuple:
        return self.nodes[0][1]

    @property
    def end(self) -> tuple:
        return self.nodes[-1][1]

    def concat(self, other: "PLPath") -> "PLPath":
        if self.end != other.start:
            raise ValueError("paths are not composable")
        half = Fraction(1, 2)
        first = [(t * half, p) for t, p in self.nodes]
        second = [(half + t * half, p) for t, p in other.nodes[1:]]
        return PLPath(tuple(first + second))

    def inverse(self) -> "PLPath":
        return PLPath(tuple((1 - t, p) for t, p in reversed(self.nodes)))


def reparametrized(path: PLPath, schedule: Schedule | str, s) -> Callable:
    """``t ↦ path(schedule(s, t))``: one stage of the homotopy."""
    return lambda t: path(evaluate(schedule, s, t))
