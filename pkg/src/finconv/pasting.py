"""Pasting continuous maps along open or closed covers.

A cover of a pseudospace whose pieces are all open, or all closed, in the
reflected topology glues piecewise-continuous maps into a continuous map.
:func:`check_pasting` evaluates hypotheses and conclusion separately, so a
violation of the lemma would show up as a verdict rather than be assumed away.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .spaces import PseudoSpace, SpaceError, SpaceMap, is_closed, is_continuous, is_open, restrict, subspace


class CoverKind(enum.Enum):
    ALL_OPEN = "AllOpen"
    ALL_CLOSED = "AllClosed"
    MIXED = "Mixed"


class GlueError(SpaceError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Cover:
    space: PseudoSpace
    pieces: tuple

    def __post_init__(self):
        pieces = tuple(frozenset(p) for p in self.pieces)
        if not pieces:
            raise SpaceError("a cover needs at least one piece")
        union = frozenset().union(*pieces)
        unknown = union - set(self.space.points)
        if unknown:
            raise SpaceError(f"cover pieces use unknown points {sorted(map(repr, unknown))}")
        if union != set(self.space.points):
            missing = [p for p in self.space.points if p not in union]
            raise SpaceError(f"pieces do not cover the space; missing {missing!r}")
        object.__setattr__(self, "pieces", pieces)

    @property
    def open_flags(self) -> tuple[bool, ...]:
        return tuple(is_open(self.space, p) for p in self.pieces)

    @property
    def closed_flags(self) -> tuple[bool, ...]:
        return tuple(is_closed(self.space, p) for p in self.pieces)

    @property
    def locally_finite(self) -> bool:
        # every finite family is locally finite
        return True

    def ordered_piece(self, k: int) -> list:
        return [p for p in self.space.points if p in self.pieces[k]]


def classify_cover(c: Cover) -> CoverKind:
    """AllOpen takes precedence when a cover is both (e.g. one clopen piece)."""
    if all(c.open_flags):
        return CoverKind.ALL_OPEN
    if all(c.closed_flags) and c.locally_finite:
        return CoverKind.ALL_CLOSED
    return CoverKind.MIXED


def hypotheses_met(c: Cover) -> bool:
    return all(c.open_flags) or (all(c.closed_flags) and c.locally_finite)


def glue(c: Cover, piece_maps: Sequence[Mapping], Y: PseudoSpace) -> SpaceMap:
    """Common extension of the piece maps, continuity not asserted."""
    if len(piece_maps) != len(c.pieces):
        raise SpaceError("one map per piece is required")
    images: dict = {}
    for piece, fmap in zip(c.pieces, piece_maps):
        if set(fmap) != set(piece):
            raise SpaceError("each piece map must be defined exactly on its piece")
        for x, y in fmap.items():
            if x in images and images[x] != y:
                raise GlueError(f"piece maps disagree at {x!r}: {images[x]!r} vs {y!r}", witness=x)
            images[x] = y
    return SpaceMap.from_mapping(c.space, Y, images)


def pieces_of(c: Cover, f: SpaceMap) -> list[dict]:
    """Restrictions of a global map to the pieces, as piece maps for :func:`glue`."""
    return [{x: f(x) for x in piece} for piece in c.pieces]


@dataclass(frozen=True)
class PastingVerdict:
    kind: CoverKind
    hypotheses_met: bool
    pieces_continuous: bool
    glue_continuous: bool
    discontinuous_pieces: tuple = field(default=())

    @property
    def violates_lemma(self) -> bool:
        return self.hypotheses_met and self.pieces_continuous and not self.glue_continuous

    def as_dict(self) -> dict:
        return {
            "cover": self.kind.value,
            "hypotheses_met": self.hypotheses_met,
            "locally_finite": True,
            "pieces_continuous": self.pieces_continuous,
            "glue_continuous": self.glue_continuous,
            "discontinuous_pieces": list(self.discontinuous_pieces),
        }


def check_pasting(c: Cover, piece_maps: Sequence[Mapping], Y: PseudoSpace) -> PastingVerdict:
    f = glue(c, piece_maps, Y)
    bad = tuple(k for k, piece in enumerate(c.pieces) if not is_continuous(restrict(f, piece)))
    kind = classify_cover(c)
    return PastingVerdict(
        kind=kind,
        hypotheses_met=hypotheses_met(c),
        pieces_continuous=not bad,
        glue_continuous=is_continuous(f),
        discontinuous_pieces=bad,
    )


def piecewise_structure(c: Cover) -> PseudoSpace:
    """Union of the piece subspace structures: a map is piecewise continuous iff it preserves this."""
    edges = []
    for piece in c.pieces:
        edges.extend(subspace(c.space, piece).edges())
    return PseudoSpace.from_edges(c.space.points, edges)


def refine(c: Cover, extra: Iterable[Iterable]) -> Cover:
    return Cover(c.space, c.pieces + tuple(frozenset(e) for e in extra))
