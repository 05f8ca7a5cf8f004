"""Filters on finite sets.

Every filter on a finite set is principal: it is the family of all supersets
of its smallest member, the *core*.  A :class:`FiniteFilter` therefore stores
only the carrier and the core; membership, refinement and equality are all
decided on the core.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as _cartesian
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

Label = Hashable


class FilterError(ValueError):
    """Raised for improper filters and carrier mismatches."""


class _Undefined:
    """The value of a pullback whose preimage condition fails."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __bool__(self) -> bool:
        return False


UNDEFINED = _Undefined()


@dataclass(frozen=True)
class SetMap:
    """A total function between two finite ordered sets."""

    domain: tuple
    codomain: tuple
    images: tuple

    def __post_init__(self):
        if len(self.images) != len(self.domain):
            raise FilterError("images must be aligned with the domain")
        cod = set(self.codomain)
        for y in self.images:
            if y not in cod:
                raise FilterError(f"image {y!r} is not in the codomain")

    @classmethod
    def from_mapping(cls, domain: Sequence, codomain: Sequence, mapping: Mapping | Callable) -> "SetMap":
        f = mapping.__getitem__ if isinstance(mapping, Mapping) else mapping
        domain = tuple(domain)
        return cls(domain, tuple(codomain), tuple(f(x) for x in domain))

    def __call__(self, x: Label) -> Label:
        return self._table[x]

    @cached_property
    def _table(self) -> dict:
        return dict(zip(self.domain, self.images))

    def as_dict(self) -> dict:
        return dict(self._table)

    def image(self, subset: Iterable[Label]) -> frozenset:
        return frozenset(self._table[x] for x in subset)

    def preimage(self, subset: Iterable[Label]) -> frozenset:
        s = set(subset)
        return frozenset(x for x, y in zip(self.domain, self.images) if y in s)

    def compose(self, inner: "SetMap") -> "SetMap":
        """``self ∘ inner``."""
        if tuple(inner.codomain) != tuple(self.domain):
            raise FilterError("maps are not composable")
        return SetMap(inner.domain, self.codomain, tuple(self._table[y] for y in inner.images))


@dataclass(frozen=True)
class FiniteFilter:
    carrier: tuple
    core: frozenset

    def __post_init__(self):
        if not self.core:
            raise FilterError("improper filter: the core is empty")
        missing = self.core.difference(self.carrier)
        if missing:
            raise FilterError(f"core is not contained in the carrier: {sorted(map(repr, missing))}")

    @property
    def is_ultrafilter(self) -> bool:
        return len(self.core) == 1

    def __contains__(self, subset: Iterable[Label]) -> bool:
        return self.core <= frozenset(subset)

    def refines(self, other: "FiniteFilter") -> bool:
        """True iff ``self ⊇ other`` as families of sets."""
        return self.carrier == other.carrier and self.core <= other.core

    def ultrafilters_above(self) -> Iterator["FiniteFilter"]:
        for a in self.carrier:
            if a in self.core:
                yield principal(self.carrier, a)

    def members(self) -> Iterator[frozenset]:
        """Enumerate the member sets (exponential in the carrier size)."""
        rest = [x for x in self.carrier if x not in self.core]
        for bits in _cartesian((False, True), repeat=len(rest)):
            yield self.core | frozenset(x for x, b in zip(rest, bits) if b)

    def __repr__(self) -> str:
        core = [x for x in self.carrier if x in self.core]
        return f"FiniteFilter(↑{core!r})"


def filter_from_core(carrier: Iterable[Label], core: Iterable[Label]) -> FiniteFilter:
    return FiniteFilter(tuple(carrier), frozenset(core))


def principal(carrier: Iterable[Label], x: Label) -> FiniteFilter:
    return filter_from_core(carrier, (x,))


def all_filters(carrier: Sequence[Label]) -> Iterator[FiniteFilter]:
    """All proper filters on ``carrier``, ordered by core bitmask."""
    carrier = tuple(carrier)
    n = len(carrier)
    for mask in range(1, 1 << n):
        yield FiniteFilter(carrier, frozenset(carrier[i] for i in range(n) if mask >> i & 1))


def _coerce(f: Any, domain: tuple, codomain: Sequence | None) -> SetMap:
    if isinstance(f, SetMap):
        return f
    set_map = getattr(f, "set_map", None)
    if isinstance(set_map, SetMap):
        return set_map
    if codomain is None:
        raise FilterError("a codomain is required for plain functions")
    return SetMap.from_mapping(domain, codomain, f)


def pushforward(f: Any, F: FiniteFilter, codomain: Sequence | None = None) -> FiniteFilter:
    """Image filter ``f_* F``, generated by the images of the members of ``F``."""
    f = _coerce(f, F.carrier, codomain)
    if set(f.domain) != set(F.carrier):
        raise FilterError("filter carrier does not match the domain of the map")
    core = f.image(F.core)
    # smallest S with f^{-1}(S) in F: covering, and no point can be dropped
    assert F.core <= f.preimage(core)
    assert all(not F.core <= f.preimage(core - {y}) for y in core)
    return FiniteFilter(tuple(f.codomain), core)


def pullback(f: Any, F: FiniteFilter, domain: Sequence | None = None):
    """Preimage filter ``f^* F`` or :data:`UNDEFINED` when some member has empty preimage."""
    if isinstance(f, SetMap) or isinstance(getattr(f, "set_map", None), SetMap):
        f = _coerce(f, (), None)
    else:
        if domain is None:
            raise FilterError("a domain is required for plain functions")
        f = SetMap.from_mapping(domain, F.carrier, f)
    if set(f.codomain) != set(F.carrier):
        raise FilterError("filter carrier does not match the codomain of the map")
    pre = f.preimage(F.core)
    if not pre:
        return UNDEFINED
    return FiniteFilter(tuple(f.domain), pre)


def filter_product(F: FiniteFilter, G: FiniteFilter) -> FiniteFilter:
    carrier = tuple(_cartesian(F.carrier, G.carrier))
    return FiniteFilter(carrier, frozenset(_cartesian(F.core, G.core)))
