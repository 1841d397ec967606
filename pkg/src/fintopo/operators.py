"""Derived set families and generalized closure operators.

Everything here is computed by brute force over the ``2**n`` subsets of the
ground set and memoized per ``(space, kind, variant)``. Spaces are immutable,
so the caches never go stale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .space import (
    FiniteSpace,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
    TopologyError,
    closure,
    interior,
    validate_topology,
)

_CACHE = 1 << 16


class AlphaMVariant(str, Enum):
    """Which witness family the α^m-closed test quantifies over.

    ``ALPHA_OPEN`` (the default) quantifies over α-open sets; ``OPEN`` over open
    sets, the reading under which the worked example (f(a)=f(c)=q, f(b)=p)
    comes out α^m-continuous.
    """

    ALPHA_OPEN = "alpha-open"
    OPEN = "open"


class FamilyKind(str, Enum):
    ALPHA_OPEN = "alpha-open"
    SEMI_OPEN = "semi-open"
    PRE_OPEN = "pre-open"
    BETA_OPEN = "beta-open"
    ALPHA_M_CLOSED = "alpha-m-closed"


class ClosureKind(str, Enum):
    CL = "cl"
    ALPHA = "acl"
    SEMI = "scl"
    PRE = "pcl"
    STAR = "cl*"


@lru_cache(maxsize=_CACHE)
def operator_tables(space: FiniteSpace) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(interior, closure)`` for every subset, indexed by mask."""
    ints = tuple(interior(space, a) for a in space.subsets())
    full = space.full
    cls = tuple(full ^ ints[full ^ a] for a in space.subsets())
    return ints, cls


def _open_kind_test(kind: FamilyKind, a: int, ints, cls) -> bool:
    if kind is FamilyKind.PRE_OPEN:
        target = ints[cls[a]]
    elif kind is FamilyKind.SEMI_OPEN:
        target = cls[ints[a]]
    elif kind is FamilyKind.ALPHA_OPEN:
        target = ints[cls[ints[a]]]
    elif kind is FamilyKind.BETA_OPEN:
        target = cls[ints[cls[a]]]
    else:
        raise ValueError(kind)
    return a & ~target == 0


def alpha_m_violation(space: FiniteSpace, a: int, variant: AlphaMVariant) -> int | None:
    """First witness ``U`` (ascending mask order) breaking α^m-closedness of ``a``.

    ``None`` means ``a`` is α^m-closed: ``int(cl(a)) ⊆ U`` for every ``U ⊇ a``
    in the variant's witness family.
    """
    ints, cls = operator_tables(space)
    target = ints[cls[a]]
    if variant is AlphaMVariant.OPEN:
        witnesses = space.opens
    else:
        witnesses = derived_family(space, FamilyKind.ALPHA_OPEN).members
    for u in witnesses:
        if a & ~u == 0 and target & ~u:
            return u
    return None


@dataclass(frozen=True)
class DerivedFamily:
    base: FiniteSpace
    kind: FamilyKind
    variant: AlphaMVariant | None
    members: tuple[int, ...]
    member_lookup: bytearray = field(repr=False, compare=False)

    def __contains__(self, mask: int) -> bool:
        return bool(self.member_lookup[mask])

    def topology_violation(self) -> TopologyError | None:
        """Check the topology axioms on ``members``; never assumed."""
        try:
            validate_topology(self.base.n, self.members)
        except TopologyError as exc:
            return exc
        return None

    @property
    def is_topology(self) -> bool:
        return self.topology_violation() is None


@lru_cache(maxsize=_CACHE)
def derived_family(space: FiniteSpace, kind: FamilyKind, variant: AlphaMVariant | None = None) -> DerivedFamily:
    kind = FamilyKind(kind)
    if kind is FamilyKind.ALPHA_M_CLOSED:
        if variant is None:
            raise ValueError("the alpha-m-closed family needs an explicit variant")
        variant = AlphaMVariant(variant)
        members = tuple(a for a in space.subsets() if alpha_m_violation(space, a, variant) is None)
    else:
        variant = None
        ints, cls = operator_tables(space)
        members = tuple(a for a in space.subsets() if _open_kind_test(kind, a, ints, cls))
    lookup = bytearray(1 << space.n)
    for a in members:
        lookup[a] = 1
    return DerivedFamily(space, kind, variant, members, lookup)


_OPEN_KIND_OF = {
    ClosureKind.ALPHA: FamilyKind.ALPHA_OPEN,
    ClosureKind.SEMI: FamilyKind.SEMI_OPEN,
    ClosureKind.PRE: FamilyKind.PRE_OPEN,
}


@lru_cache(maxsize=_CACHE)
def closed_family(space: FiniteSpace, kind: ClosureKind, variant: AlphaMVariant | None = None) -> tuple[int, ...]:
    """Sorted closed sets of the given kind (complements of the open family, or α^m-closed sets for cl*)."""
    kind = ClosureKind(kind)
    if kind is ClosureKind.CL:
        return space.closed_sets
    if kind is ClosureKind.STAR:
        if variant is None:
            raise ValueError("cl* needs an explicit alpha-m variant")
        return derived_family(space, FamilyKind.ALPHA_M_CLOSED, variant).members
    full = space.full
    return tuple(sorted(full ^ u for u in derived_family(space, _OPEN_KIND_OF[kind]).members))


def generalized_closure(space: FiniteSpace, kind: ClosureKind, a: int, variant: AlphaMVariant | None = None) -> int:
    """Intersection of every kind-closed superset of ``a``.

    For cl* the result is the bare intersection; it need not be α^m-closed itself.
    """
    kind = ClosureKind(kind)
    if kind is ClosureKind.CL:
        return closure(space, a)
    out = space.full
    for c in closed_family(space, kind, variant):
        if a & ~c == 0:
            out &= c
    return out


@lru_cache(maxsize=_CACHE)
def star_closure_table(space: FiniteSpace, variant: AlphaMVariant) -> tuple[int, ...]:
    return tuple(generalized_closure(space, ClosureKind.STAR, a, variant) for a in space.subsets())


@dataclass(frozen=True)
class TauStarFailure:
    """The τ* family is not a topology; ``axiom`` names the first broken rule."""

    space: FiniteSpace
    variant: AlphaMVariant
    family: tuple[int, ...]
    axiom: str
    witness: tuple[int, ...]

    def describe(self) -> str:
        return f"{self.axiom}: " + ", ".join(self.space.fmt(m) for m in self.witness)


def tau_star_family(space: FiniteSpace, variant: AlphaMVariant) -> tuple[int, ...]:
    star = star_closure_table(space, variant)
    full = space.full
    return tuple(g for g in space.subsets() if star[full ^ g] == full ^ g)


@lru_cache(maxsize=_CACHE)
def tau_star(space: FiniteSpace, variant: AlphaMVariant) -> FiniteSpace | TauStarFailure:
    """The family ``{G : cl*(X - G) = X - G}``, returned as a space when it is a topology."""
    variant = AlphaMVariant(variant)
    family = tau_star_family(space, variant)
    try:
        return validate_topology(space.n, family, space.names)
    except NotClosedUnderUnion as exc:
        return TauStarFailure(space, variant, family, "union", exc.pair)
    except NotClosedUnderIntersection as exc:
        return TauStarFailure(space, variant, family, "intersection", exc.pair)
    except TopologyError:
        return TauStarFailure(space, variant, family, "empty-or-full", ())
