"""Set-class and map-class predicates.

Quantified predicates ("cl(A) ⊆ U whenever A ⊆ U and U is open", and the like)
short-circuit on the first violating witness in ascending mask order and hand
that witness back, so callers can quote it.

Three set classes (sg-, αg- and w-closed) exist only to support the map
classes built on them; they use the standard definitions and are listed in
``SUPPLIED_SET_CLASSES``. The same goes for the α^m-closed map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product

import numpy as np

from .operators import (
    AlphaMVariant,
    ClosureKind,
    FamilyKind,
    alpha_m_violation,
    closed_family,
    derived_family,
    generalized_closure,
    operator_tables,
)
from .space import FiniteSpace, PointMap, image, preimage

__all__ = [
    "AlphaMVariant",
    "SetClass",
    "MapClass",
    "ClassVector",
    "SUPPLIED_SET_CLASSES",
    "SUPPLIED_MAP_CLASSES",
    "is_alpha_m_closed",
    "set_class_witness",
    "in_class",
    "classify_subset",
    "classify_map",
    "map_class_witness",
    "open_closed_formulation_agrees",
    "set_class_table",
    "map_images",
    "classify_all_maps",
    "map_index",
]


class SetClass(str, Enum):
    OPEN = "open"
    CLOSED = "closed"
    PRE_OPEN = "pre-open"
    PRE_CLOSED = "pre-closed"
    SEMI_OPEN = "semi-open"
    SEMI_CLOSED = "semi-closed"
    ALPHA_OPEN = "alpha-open"
    ALPHA_CLOSED = "alpha-closed"
    BETA_OPEN = "beta-open"
    BETA_CLOSED = "beta-closed"
    G_CLOSED = "g-closed"
    GALPHA_CLOSED = "galpha-closed"
    WG_CLOSED = "wg-closed"
    WGALPHA_CLOSED = "wgalpha-closed"
    ALPHA_M_CLOSED = "alpha-m-closed"
    SG_CLOSED = "sg-closed"
    ALPHAG_CLOSED = "alphag-closed"
    W_CLOSED = "w-closed"


class MapClass(str, Enum):
    CONTINUOUS = "continuous"
    G_CONTINUOUS = "g-continuous"
    SG_CONTINUOUS = "sg-continuous"
    ALPHAG_CONTINUOUS = "alphag-continuous"
    WG_CONTINUOUS = "wg-continuous"
    W_CONTINUOUS = "w-continuous"
    IRRESOLUTE = "irresolute"
    ALPHA_M_CONTINUOUS = "alpha-m-continuous"
    ALPHA_M_IRRESOLUTE = "alpha-m-irresolute"
    CLOSED_MAP = "closed-map"
    ALPHA_M_CLOSED_MAP = "alpha-m-closed-map"


SUPPLIED_SET_CLASSES = frozenset({SetClass.SG_CLOSED, SetClass.ALPHAG_CLOSED, SetClass.W_CLOSED})
SUPPLIED_MAP_CLASSES = frozenset({MapClass.ALPHA_M_CLOSED_MAP})

# Classes whose truth depends on the α^m witness family.
VARIANT_SET_CLASSES = frozenset({SetClass.ALPHA_M_CLOSED})
VARIANT_MAP_CLASSES = frozenset(
    {MapClass.ALPHA_M_CONTINUOUS, MapClass.ALPHA_M_IRRESOLUTE, MapClass.ALPHA_M_CLOSED_MAP}
)


@dataclass(frozen=True)
class ClassVector:
    object_id: str
    satisfied: frozenset
    variant: AlphaMVariant
    witnesses: dict = field(default_factory=dict, compare=False)

    def __contains__(self, tag) -> bool:
        return tag in self.satisfied


# -- sets -----------------------------------------------------------------


def _first_escape(value: int, a: int, family) -> int | None:
    """First ``U`` in ``family`` with ``a ⊆ U`` but ``value ⊄ U``."""
    for u in family:
        if a & ~u == 0 and value & ~u:
            return u
    return None


def is_alpha_m_closed(space: FiniteSpace, a: int, variant: AlphaMVariant) -> bool:
    return alpha_m_violation(space, a, AlphaMVariant(variant)) is None


def set_class_witness(space: FiniteSpace, tag: SetClass, a: int, variant: AlphaMVariant) -> tuple[bool, int | None]:
    """Evaluate one set class; the second item is the escaping ``U`` for quantified classes."""
    tag = SetClass(tag)
    ints, cls = operator_tables(space)
    if tag is SetClass.OPEN:
        return space.is_open(a), None
    if tag is SetClass.CLOSED:
        return space.is_closed(a), None
    if tag is SetClass.PRE_OPEN:
        return a & ~ints[cls[a]] == 0, None
    if tag is SetClass.PRE_CLOSED:
        return cls[ints[a]] & ~a == 0, None
    if tag is SetClass.SEMI_OPEN:
        return a & ~cls[ints[a]] == 0, None
    if tag is SetClass.SEMI_CLOSED:
        return ints[cls[a]] & ~a == 0, None
    if tag is SetClass.ALPHA_OPEN:
        return a & ~ints[cls[ints[a]]] == 0, None
    if tag is SetClass.ALPHA_CLOSED:
        return cls[ints[cls[a]]] & ~a == 0, None
    if tag is SetClass.BETA_OPEN:
        return a & ~cls[ints[cls[a]]] == 0, None
    if tag is SetClass.BETA_CLOSED:
        return ints[cls[ints[a]]] & ~a == 0, None

    alpha_open = derived_family(space, FamilyKind.ALPHA_OPEN).members
    semi_open = derived_family(space, FamilyKind.SEMI_OPEN).members
    if tag is SetClass.ALPHA_M_CLOSED:
        u = alpha_m_violation(space, a, AlphaMVariant(variant))
    elif tag is SetClass.G_CLOSED:
        u = _first_escape(cls[a], a, space.opens)
    elif tag is SetClass.GALPHA_CLOSED:
        u = _first_escape(generalized_closure(space, ClosureKind.ALPHA, a), a, alpha_open)
    elif tag is SetClass.WG_CLOSED:
        u = _first_escape(cls[ints[a]], a, space.opens)
    elif tag is SetClass.WGALPHA_CLOSED:
        u = _first_escape(generalized_closure(space, ClosureKind.ALPHA, ints[a]), a, alpha_open)
    elif tag is SetClass.SG_CLOSED:
        u = _first_escape(generalized_closure(space, ClosureKind.SEMI, a), a, semi_open)
    elif tag is SetClass.ALPHAG_CLOSED:
        u = _first_escape(generalized_closure(space, ClosureKind.ALPHA, a), a, space.opens)
    elif tag is SetClass.W_CLOSED:
        u = _first_escape(cls[a], a, semi_open)
    else:  # pragma: no cover
        raise ValueError(tag)
    return u is None, u


def in_class(space: FiniteSpace, tag: SetClass, a: int, variant: AlphaMVariant) -> bool:
    return set_class_table(space, AlphaMVariant(variant))[SetClass(tag)][a]


def classify_subset(space: FiniteSpace, a: int, variant: AlphaMVariant = AlphaMVariant.ALPHA_OPEN) -> ClassVector:
    variant = AlphaMVariant(variant)
    satisfied = set()
    witnesses = {}
    for tag in SetClass:
        ok, u = set_class_witness(space, tag, a, variant)
        if ok:
            satisfied.add(tag)
        elif u is not None:
            witnesses[tag] = u
    return ClassVector(space.fmt(a), frozenset(satisfied), variant, witnesses)


@lru_cache(maxsize=1 << 16)
def set_class_table(space: FiniteSpace, variant: AlphaMVariant) -> dict:
    """``{SetClass: numpy bool array over all masks}`` for one space."""
    out = {}
    for tag in SetClass:
        arr = np.fromiter(
            (set_class_witness(space, tag, a, variant)[0] for a in space.subsets()),
            dtype=bool,
            count=1 << space.n,
        )
        arr.flags.writeable = False
        out[tag] = arr
    return out


# -- maps -----------------------------------------------------------------

# (quantified family on the codomain, required class on the domain, open-formulated?)
_PREIMAGE_RULES = {
    MapClass.CONTINUOUS: ("open", SetClass.OPEN, False),
    MapClass.G_CONTINUOUS: ("closed", SetClass.G_CLOSED, False),
    MapClass.SG_CONTINUOUS: ("closed", SetClass.SG_CLOSED, False),
    MapClass.ALPHAG_CONTINUOUS: ("open", SetClass.ALPHAG_CLOSED, True),
    MapClass.WG_CONTINUOUS: ("open", SetClass.WG_CLOSED, True),
    MapClass.W_CONTINUOUS: ("open", SetClass.W_CLOSED, True),
    MapClass.IRRESOLUTE: ("semi-closed", SetClass.SEMI_CLOSED, False),
    MapClass.ALPHA_M_CONTINUOUS: ("closed", SetClass.ALPHA_M_CLOSED, False),
    MapClass.ALPHA_M_IRRESOLUTE: ("alpha-m-closed", SetClass.ALPHA_M_CLOSED, False),
}

# image of every closed set of the domain must land in this codomain class
_IMAGE_RULES = {
    MapClass.CLOSED_MAP: SetClass.CLOSED,
    MapClass.ALPHA_M_CLOSED_MAP: SetClass.ALPHA_M_CLOSED,
}


def _source_family(space: FiniteSpace, name: str, variant: AlphaMVariant) -> tuple[int, ...]:
    if name == "open":
        return space.opens
    if name == "closed":
        return space.closed_sets
    if name == "semi-closed":
        return closed_family(space, ClosureKind.SEMI)
    if name == "alpha-m-closed":
        return derived_family(space, FamilyKind.ALPHA_M_CLOSED, variant).members
    raise ValueError(name)


def map_class_witness(f: PointMap, tag: MapClass, variant: AlphaMVariant) -> dict | None:
    """``None`` if ``f`` is in the class, else a description of the first failing set."""
    tag = MapClass(tag)
    variant = AlphaMVariant(variant)
    x, y = f.domain, f.codomain
    if tag in _IMAGE_RULES:
        want = _IMAGE_RULES[tag]
        for c in x.closed_sets:
            b = image(f, c)
            ok, u = set_class_witness(y, want, b, variant)
            if not ok:
                return {"set": c, "image": b, "inner": u}
        return None
    source, want, via_complement = _PREIMAGE_RULES[tag]
    for v in _source_family(y, source, variant):
        pre = preimage(f, v)
        probe = x.full ^ pre if via_complement else pre
        ok, u = set_class_witness(x, want, probe, variant)
        if not ok:
            return {"set": v, "preimage": pre, "inner": u}
    return None


def classify_map(f: PointMap, variant: AlphaMVariant = AlphaMVariant.ALPHA_OPEN, object_id: str = "f") -> ClassVector:
    variant = AlphaMVariant(variant)
    satisfied = set()
    witnesses = {}
    for tag in MapClass:
        w = map_class_witness(f, tag, variant)
        if w is None:
            satisfied.add(tag)
        else:
            witnesses[tag] = w
    return ClassVector(object_id, frozenset(satisfied), variant, witnesses)


def open_closed_formulation_agrees(f: PointMap, variant: AlphaMVariant) -> bool:
    """Closed-set and open-set formulations of α^m-continuity must coincide."""
    x, y = f.domain, f.codomain
    closed_form = all(is_alpha_m_closed(x, preimage(f, c), variant) for c in y.closed_sets)
    open_form = all(is_alpha_m_closed(x, x.full ^ preimage(f, g), variant) for g in y.opens)
    return closed_form == open_form


# -- all maps at once -----------------------------------------------------


@lru_cache(maxsize=256)
def map_images(nx: int, ny: int) -> np.ndarray:
    """Every image array ``X -> Y`` in lexicographic order, shape ``(ny**nx, nx)``."""
    arr = np.array(list(product(range(ny), repeat=nx)), dtype=np.int64).reshape(-1, nx)
    arr.flags.writeable = False
    return arr


@lru_cache(maxsize=256)
def preimage_table(nx: int, ny: int) -> np.ndarray:
    """``table[m, b]`` = preimage of codomain mask ``b`` under map ``m``."""
    imgs = map_images(nx, ny)
    bmasks = np.arange(1 << ny, dtype=np.int64)
    hits = (bmasks[None, :, None] >> imgs[:, None, :]) & 1  # (M, 2^ny, nx)
    table = (hits << np.arange(nx, dtype=np.int64)).sum(axis=2)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=256)
def image_table(nx: int, ny: int) -> np.ndarray:
    """``table[m, a]`` = image of domain mask ``a`` under map ``m``."""
    imgs = map_images(nx, ny)
    amasks = np.arange(1 << nx, dtype=np.int64)
    member = (amasks[:, None] >> np.arange(nx)) & 1  # (2^nx, nx)
    bits = np.left_shift(1, imgs)  # (M, nx)
    table = np.bitwise_or.reduce(member[None, :, :] * bits[:, None, :], axis=2)
    table.flags.writeable = False
    return table


def _array_family(space: FiniteSpace, name: str, variant: AlphaMVariant) -> np.ndarray:
    return np.asarray(_source_family(space, name, variant), dtype=np.int64)


@lru_cache(maxsize=1 << 14)
def classify_all_maps(x: FiniteSpace, y: FiniteSpace, variant: AlphaMVariant) -> dict:
    """``{MapClass: bool array}`` over all maps ``x -> y`` in :func:`map_images` order."""
    variant = AlphaMVariant(variant)
    pre = preimage_table(x.n, y.n)
    img = image_table(x.n, y.n)
    xt = set_class_table(x, variant)
    yt = set_class_table(y, variant)
    out = {}
    for tag, (source, want, via_complement) in _PREIMAGE_RULES.items():
        cols = pre[:, _array_family(y, source, variant)]
        if via_complement:
            cols = x.full ^ cols
        out[tag] = xt[want][cols].all(axis=1)
    closed_x = np.asarray(x.closed_sets, dtype=np.int64)
    for tag, want in _IMAGE_RULES.items():
        out[tag] = yt[want][img[:, closed_x]].all(axis=1)
    for arr in out.values():
        arr.flags.writeable = False
    return out


def map_index(image_array, ny: int) -> int:
    """Position of an image array in :func:`map_images` order."""
    idx = 0
    for y in image_array:
        idx = idx * ny + int(y)
    return idx
