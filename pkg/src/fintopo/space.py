"""Finite topological spaces, point maps, and the primitive interior/closure operators.

Subsets are plain ``int`` bitmasks: point ``i`` belongs to the subset iff bit ``i``
is set. Points are dense indices ``0..n-1``; names only matter for printing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

MAX_POINTS = 16

SubsetMask = int


class TopologyError(ValueError):
    """A family of subsets failed the topology axioms."""


class GroundSetTooLarge(TopologyError):
    pass


class MissingEmptyOrFull(TopologyError):
    pass


class NotClosedUnderUnion(TopologyError):
    def __init__(self, pair: tuple[int, int], n: int):
        self.pair = pair
        a, b = pair
        super().__init__(
            f"{format_mask(a, n)} | {format_mask(b, n)} = {format_mask(a | b, n)} is not in the family"
        )


class NotClosedUnderIntersection(TopologyError):
    def __init__(self, pair: tuple[int, int], n: int):
        self.pair = pair
        a, b = pair
        super().__init__(
            f"{format_mask(a, n)} & {format_mask(b, n)} = {format_mask(a & b, n)} is not in the family"
        )


class EmptySubspace(ValueError):
    pass


class SpaceMismatch(ValueError):
    pass


# -- mask helpers ---------------------------------------------------------


def full_mask(n: int) -> int:
    return (1 << n) - 1


def complement(mask: int, n: int) -> int:
    return full_mask(n) ^ mask


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def points_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def default_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(chr(ord("a") + i) for i in range(n))
    return tuple(f"x{i}" for i in range(n))


def format_mask(mask: int, n: int, names: Sequence[str] | None = None) -> str:
    names = names or default_names(n)
    return "{" + ",".join(names[i] for i in points_of(mask)) + "}"


# -- spaces ---------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSpace:
    """A validated topology on ``n`` points.

    Build through :func:`validate_topology`; the constructor trusts its input.
    Equality and hashing use ``(n, opens)`` only, so two spaces that differ just
    in point names compare equal.
    """

    n: int
    opens: tuple[int, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    @cached_property
    def open_lookup(self) -> bytearray:
        table = bytearray(1 << self.n)
        for u in self.opens:
            table[u] = 1
        return table

    @cached_property
    def full(self) -> int:
        return full_mask(self.n)

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        return tuple(sorted(self.full ^ u for u in self.opens))

    @cached_property
    def minimal_neighbourhoods(self) -> tuple[int, ...]:
        """Smallest open set containing each point."""
        out = []
        for x in range(self.n):
            bit = 1 << x
            m = self.full
            for u in self.opens:
                if u & bit:
                    m &= u
            out.append(m)
        return tuple(out)

    @cached_property
    def point_names(self) -> tuple[str, ...]:
        return self.names or default_names(self.n)

    def is_open(self, mask: int) -> bool:
        return bool(self.open_lookup[mask])

    def is_closed(self, mask: int) -> bool:
        return bool(self.open_lookup[self.full ^ mask])

    def subsets(self) -> range:
        return range(1 << self.n)

    def fmt(self, mask: int) -> str:
        return format_mask(mask, self.n, self.point_names)

    def with_names(self, names: Sequence[str] | None) -> "FiniteSpace":
        if names is not None:
            names = tuple(names)
            if len(names) != self.n or len(set(names)) != self.n:
                raise ValueError(f"need {self.n} unique point names, got {names!r}")
        return FiniteSpace(self.n, self.opens, names)

    def __str__(self) -> str:
        return "{" + ", ".join(self.fmt(u) for u in self.opens) + "}"


def validate_topology(n: int, family: Iterable[int], names: Sequence[str] | None = None) -> FiniteSpace:
    """Check the topology axioms on ``family`` and build a :class:`FiniteSpace`.

    Raises the first violation found, scanning pairs in ascending mask order, so
    the witness pair is deterministic.
    """
    if not 1 <= n <= MAX_POINTS:
        raise GroundSetTooLarge(f"ground set size must be in 1..{MAX_POINTS}, got {n}")
    opens = sorted(set(family))
    if not opens:
        raise MissingEmptyOrFull("empty family")
    full = full_mask(n)
    for u in opens:
        if u < 0 or u > full:
            raise TopologyError(f"mask {u:#x} has bits outside the {n}-point ground set")
    if opens[0] != 0 or opens[-1] != full:
        raise MissingEmptyOrFull("family must contain the empty set and the full set")
    members = set(opens)
    for i, a in enumerate(opens):
        for b in opens[i + 1 :]:
            if a | b not in members:
                raise NotClosedUnderUnion((a, b), n)
            if a & b not in members:
                raise NotClosedUnderIntersection((a, b), n)
    space = FiniteSpace(n, tuple(opens))
    return space.with_names(names) if names is not None else space


def discrete(n: int) -> FiniteSpace:
    return FiniteSpace(n, tuple(range(1 << n)))


def indiscrete(n: int) -> FiniteSpace:
    return FiniteSpace(n, (0, full_mask(n)))


# -- operators ------------------------------------------------------------


def interior(space: FiniteSpace, a: int) -> int:
    """Largest open subset of ``a``."""
    out = 0
    for x, u in enumerate(space.minimal_neighbourhoods):
        if (a >> x) & 1 and u & ~a == 0:
            out |= u
    return out


def closure(space: FiniteSpace, a: int) -> int:
    """Smallest closed superset of ``a``."""
    full = space.full
    return full ^ interior(space, full ^ a)


def subspace(space: FiniteSpace, h: int) -> tuple[FiniteSpace, tuple[int, ...]]:
    """Relative topology on ``h``.

    Returns the subspace (points of ``h`` re-indexed densely, in ascending order)
    and the tuple mapping each subspace point to its parent point.
    """
    if h == 0:
        raise EmptySubspace("subspace on the empty set")
    parent = tuple(points_of(h))
    opens = {compress(u & h, parent) for u in space.opens}
    sub = validate_topology(len(parent), opens)
    names = space.point_names
    return sub.with_names([names[p] for p in parent]), parent


def compress(mask: int, parent: Sequence[int]) -> int:
    """Map a parent subset into subspace coordinates (points outside are dropped)."""
    out = 0
    for i, p in enumerate(parent):
        if (mask >> p) & 1:
            out |= 1 << i
    return out


def lift(mask: int, parent: Sequence[int]) -> int:
    """Map a subspace subset back to a subset of the parent space."""
    out = 0
    for i, p in enumerate(parent):
        if (mask >> i) & 1:
            out |= 1 << p
    return out


# -- maps -----------------------------------------------------------------


@dataclass(frozen=True)
class PointMap:
    domain: FiniteSpace
    codomain: FiniteSpace
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.domain.n:
            raise ValueError(f"image array has length {len(self.image)}, domain has {self.domain.n} points")
        for y in self.image:
            if not 0 <= y < self.codomain.n:
                raise ValueError(f"image entry {y} outside codomain of size {self.codomain.n}")

    @classmethod
    def identity(cls, space: FiniteSpace) -> "PointMap":
        return cls(space, space, tuple(range(space.n)))

    @classmethod
    def constant(cls, domain: FiniteSpace, codomain: FiniteSpace, y: int) -> "PointMap":
        return cls(domain, codomain, (y,) * domain.n)

    @cached_property
    def _preimage_of_point(self) -> tuple[int, ...]:
        pre = [0] * self.codomain.n
        for x, y in enumerate(self.image):
            pre[y] |= 1 << x
        return tuple(pre)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __str__(self) -> str:
        dn, cn = self.domain.point_names, self.codomain.point_names
        return ", ".join(f"{dn[x]}->{cn[y]}" for x, y in enumerate(self.image))


def preimage(f: PointMap, b: int) -> int:
    out = 0
    for y, pre in enumerate(f._preimage_of_point):
        if (b >> y) & 1:
            out |= pre
    return out


def image(f: PointMap, a: int) -> int:
    out = 0
    for x, y in enumerate(f.image):
        if (a >> x) & 1:
            out |= 1 << y
    return out


def compose(f: PointMap, g: PointMap) -> PointMap:
    """``g o f``: apply ``f`` first."""
    if f.codomain != g.domain:
        raise SpaceMismatch("codomain of f is not the domain of g")
    return PointMap(f.domain, g.codomain, tuple(g.image[y] for y in f.image))


def restrict(f: PointMap, h: int) -> PointMap:
    """Restriction of ``f`` to ``h`` carrying the relative topology."""
    sub, parent = subspace(f.domain, h)
    return PointMap(sub, f.codomain, tuple(f.image[p] for p in parent))
