"""Registry of checkable claims about α^m-closed sets and α^m-continuous maps.

Every claim has two routes:

* ``scan`` sweeps one partition of the search universe (one domain space) and
  stops at the first violating instance. Map claims use the numpy tables from
  :func:`fintopo.classifiers.classify_all_maps`.
* ``check`` re-evaluates a single instance with the scalar predicates and
  returns a description of the violation, or ``None``.

A sweep hit that ``check`` does not confirm raises ``RouteMismatch``, which is
always a bug. Replaying a stored witness means calling ``check`` again.

Claim ids are stable; reports, tests and ``--claim`` filters key on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, Iterable

import numpy as np

from .classifiers import (
    MapClass,
    SetClass,
    classify_all_maps,
    image_table,
    is_alpha_m_closed,
    map_class_witness,
    map_images,
    open_closed_formulation_agrees,
    preimage_table,
    set_class_table,
)
from .enumeration import (
    BudgetExceeded,
    ClaimVerdict,
    Instance,
    Outcome,
    PartitionResult,
    SearchBudget,
    _deadline_check,
    catalog,
    search_counterexample,
    universe,
)
from .operators import (
    AlphaMVariant,
    ClosureKind,
    FamilyKind,
    TauStarFailure,
    alpha_m_violation,
    derived_family,
    generalized_closure,
    star_closure_table,
    tau_star,
)
from .space import (
    FiniteSpace,
    PointMap,
    closure,
    compose,
    compress,
    image,
    preimage,
    restrict,
    subspace,
    validate_topology,
)

AMC = MapClass.ALPHA_M_CONTINUOUS
AMI = MapClass.ALPHA_M_IRRESOLUTE
AMCM = MapClass.ALPHA_M_CLOSED_MAP
CONT = MapClass.CONTINUOUS
IRR = MapClass.IRRESOLUTE


class UnknownClaim(KeyError):
    pass


class RouteMismatch(AssertionError):
    """The vectorized sweep and the scalar checker disagree on an instance."""


@dataclass(frozen=True)
class ClaimSpec:
    id: str
    kind: str
    statement: str
    universe: str
    scan: Callable
    check: Callable
    partitions: Callable
    notes: tuple[str, ...] = ()
    fatal: bool = False
    expected: str | None = None


# -- shared helpers -------------------------------------------------------


def _space(sid) -> FiniteSpace:
    n, i = sid
    return catalog(n)[i]


def _domain_partitions(budget: SearchBudget) -> list[tuple[int, int]]:
    return [sid for sid, _ in universe(budget.max_domain_n, budget)]


def _codomains(budget: SearchBudget):
    return universe(budget.max_codomain_n, budget)


def _map(inst: Instance, k: int, src: int, dst: int) -> PointMap:
    return PointMap(inst.spaces[src], inst.spaces[dst], inst.maps[k])


def _fmt(space: FiniteSpace, mask: int | None) -> str | None:
    return None if mask is None else space.fmt(mask)


def _describe(f: PointMap, w: dict) -> dict:
    """Render a map-class witness from :func:`map_class_witness` with point names."""
    x, y = f.domain, f.codomain
    if "image" in w:
        return {"closed set": x.fmt(w["set"]), "image": y.fmt(w["image"]), "escaping U": _fmt(y, w["inner"])}
    return {"codomain set": y.fmt(w["set"]), "preimage": x.fmt(w["preimage"]), "escaping U": _fmt(x, w["inner"])}


def _amc_detail(space: FiniteSpace, a: int, variant) -> dict:
    return {"escaping U": _fmt(space, alpha_m_violation(space, a, variant))}


def _indices(images: np.ndarray, ny: int) -> np.ndarray:
    """Positions of image arrays (rows) in :func:`map_images` order."""
    k = images.shape[-1]
    weights = ny ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return images @ weights


@lru_cache(maxsize=1 << 14)
def _restriction(space: FiniteSpace, h: int):
    return subspace(space, h)


def _star_image_ok(x: FiniteSpace, y: FiniteSpace, variant) -> np.ndarray:
    """``ok[m, a]``: ``f(cl*(a)) ⊆ cl(f(a))`` for map ``m``."""
    star = np.asarray(star_closure_table(x, variant), dtype=np.int64)
    img = image_table(x.n, y.n)
    cly = np.asarray([closure(y, b) for b in y.subsets()], dtype=np.int64)
    lhs = img[:, star]
    rhs = cly[img]
    return (lhs & ~rhs) == 0


@lru_cache(maxsize=1 << 14)
def _alpha_m_interior(space: FiniteSpace, variant) -> np.ndarray:
    """Union of the α^m-open subsets of each mask."""
    full = space.full
    amo = [full ^ c for c in derived_family(space, FamilyKind.ALPHA_M_CLOSED, variant).members]
    out = np.zeros(1 << space.n, dtype=np.int64)
    for w in space.subsets():
        acc = 0
        for u in amo:
            if u & ~w == 0:
                acc |= u
        out[w] = acc
    return out


def _confirm(claim_id: str, check: Callable, inst: Instance, variant) -> tuple[Instance, dict]:
    detail = check(inst, variant)
    if detail is None:
        raise RouteMismatch(f"{claim_id}: sweep flagged an instance the scalar check accepts: {inst}")
    return inst, detail


# -- scan drivers ---------------------------------------------------------


def _scan_spaces(claim_id, check, instances, key, budget, variant, deadline) -> PartitionResult:
    """Scalar sweep over the instances ``instances(space)`` of one domain space."""
    x = _space(key)
    res = PartitionResult()
    for subsets in instances(x, variant):
        _deadline_check(deadline)
        res.checked += 1
        inst = Instance((x,), (), subsets, (key,))
        detail = check(inst, variant)
        if detail is not None:
            res.violation = (inst, detail)
            break
    return res


def _scan_pairs(claim_id, check, violations, key, budget, variant, deadline) -> PartitionResult:
    """Sweep all maps from one domain space to every codomain in the budget.

    ``violations(x, y, variant)`` returns ``(bad, extras, stats)`` where ``bad``
    is a ``(maps, k)`` bool matrix and ``extras[j]`` the subset tuple of column ``j``.
    """
    x = _space(key)
    res = PartitionResult()
    for yid, y in _codomains(budget):
        _deadline_check(deadline)
        bad, extras, stats = violations(x, y, variant)
        for k, v in stats.items():
            res.stats[k] = res.stats.get(k, 0) + v
        hits = np.flatnonzero(bad)
        if hits.size:
            first = int(hits[0])
            m, j = divmod(first, bad.shape[1])
            res.checked += first + 1
            img = tuple(int(v) for v in map_images(x.n, y.n)[m])
            inst = Instance((x, y), (img,), tuple(extras[j]), (key, yid))
            res.violation = _confirm(claim_id, check, inst, variant)
            return res
        res.checked += bad.size
    return res


def _scan_triples(claim_id, check, violations, key, budget, variant, deadline) -> PartitionResult:
    """Sweep all map pairs ``x -> y -> z``; ``bad`` is indexed ``[f, g]``."""
    x = _space(key)
    res = PartitionResult()
    for yid, y in _codomains(budget):
        for zid, z in _codomains(budget):
            _deadline_check(deadline)
            bad = violations(x, y, z, variant)
            hits = np.flatnonzero(bad)
            if hits.size:
                first = int(hits[0])
                fi, gi = divmod(first, bad.shape[1])
                res.checked += first + 1
                f = tuple(int(v) for v in map_images(x.n, y.n)[fi])
                g = tuple(int(v) for v in map_images(y.n, z.n)[gi])
                inst = Instance((x, y, z), (f, g), (), (key, yid, zid))
                res.violation = _confirm(claim_id, check, inst, variant)
                return res
            res.checked += bad.size
    return res


def _composite_flags(x, y, z, variant, tag) -> np.ndarray:
    """``flags[f, g]`` = class ``tag`` of ``g o f`` for every map pair."""
    fimg = map_images(x.n, y.n)
    gimg = map_images(y.n, z.n)
    comp = gimg[:, fimg]  # (G, F, nx)
    idx = _indices(comp, z.n).T  # (F, G)
    return classify_all_maps(x, z, variant)[tag][idx]


# -- map claims -----------------------------------------------------------


def _vec_32_fwd(x, y, variant):
    t = classify_all_maps(x, y, variant)
    return (t[CONT] & ~t[AMC])[:, None], [()], {}


def _check_32_fwd(inst, variant):
    f = _map(inst, 0, 0, 1)
    if map_class_witness(f, CONT, variant) is not None:
        return None
    w = map_class_witness(f, AMC, variant)
    if w is None:
        return None
    return {"continuous": True, "alpha-m-continuous": False, **_describe(f, w)}


def _vec_32_conv(x, y, variant):
    t = classify_all_maps(x, y, variant)
    return (t[AMC] & ~t[CONT])[:, None], [()], {}


def _check_32_conv(inst, variant):
    f = _map(inst, 0, 0, 1)
    if map_class_witness(f, AMC, variant) is not None:
        return None
    w = map_class_witness(f, CONT, variant)
    if w is None:
        return None
    return {"alpha-m-continuous": True, "continuous": False, **_describe(f, w)}


def _vec_34_i(x, y, variant):
    closed_form = classify_all_maps(x, y, variant)[AMC]
    amc = set_class_table(x, variant)[SetClass.ALPHA_M_CLOSED]
    pre = preimage_table(x.n, y.n)[:, np.asarray(y.opens, dtype=np.int64)]
    open_form = amc[x.full ^ pre].all(axis=1)
    return (closed_form != open_form)[:, None], [()], {}


def _check_34_i(inst, variant):
    f = _map(inst, 0, 0, 1)
    if open_closed_formulation_agrees(f, variant):
        return None
    x, y = f.domain, f.codomain
    return {
        "closed formulation": all(is_alpha_m_closed(x, preimage(f, c), variant) for c in y.closed_sets),
        "open formulation": all(is_alpha_m_closed(x, x.full ^ preimage(f, g), variant) for g in y.opens),
    }


def _vec_34_ii(x, y, variant):
    amc = classify_all_maps(x, y, variant)[AMC]
    bad = ~_star_image_ok(x, y, variant) & amc[:, None]
    return bad, [(a,) for a in x.subsets()], {}


def _closure_inclusion(f: PointMap, a: int, variant) -> dict | None:
    x, y = f.domain, f.codomain
    star = generalized_closure(x, ClosureKind.STAR, a, variant)
    lhs = image(f, star)
    rhs = closure(y, image(f, a))
    if lhs & ~rhs == 0:
        return None
    return {"A": x.fmt(a), "cl*(A)": x.fmt(star), "f(cl*(A))": y.fmt(lhs), "cl(f(A))": y.fmt(rhs)}


def _check_34_ii(inst, variant):
    f = _map(inst, 0, 0, 1)
    if map_class_witness(f, AMC, variant) is not None:
        return None
    d = _closure_inclusion(f, inst.subsets[0], variant)
    return None if d is None else {"alpha-m-continuous": True, **d}


def _local_condition(f: PointMap, variant) -> dict | None:
    """First ``(x, V)`` with no α^m-open ``U ∋ x`` such that ``f(U) ⊆ V``."""
    x, y = f.domain, f.codomain
    amo = [x.full ^ c for c in derived_family(x, FamilyKind.ALPHA_M_CLOSED, variant).members]
    for p in range(x.n):
        for v in y.opens:
            if not v >> f.image[p] & 1:
                continue
            if not any(u >> p & 1 and image(f, u) & ~v == 0 for u in amo):
                return {"point": x.point_names[p], "open V": y.fmt(v)}
    return None


def _closure_condition(f: PointMap, variant) -> dict | None:
    for a in f.domain.subsets():
        d = _closure_inclusion(f, a, variant)
        if d is not None:
            return d
    return None


def _vec_34_iii_ab(x, y, variant):
    amint = _alpha_m_interior(x, variant)
    pre = preimage_table(x.n, y.n)[:, np.asarray(y.opens, dtype=np.int64)]
    cond_a = (amint[pre] == pre).all(axis=1)
    cond_b = _star_image_ok(x, y, variant).all(axis=1)
    return (cond_a != cond_b)[:, None], [()], {}


def _check_34_iii_ab(inst, variant):
    f = _map(inst, 0, 0, 1)
    wa = _local_condition(f, variant)
    wb = _closure_condition(f, variant)
    if (wa is None) == (wb is None):
        return None
    out = {"(a) holds": wa is None, "(b) holds": wb is None}
    out.update({f"(a) fails at {k}": v for k, v in (wa or {}).items()})
    out.update({f"(b) fails at {k}": v for k, v in (wb or {}).items()})
    return out


def _vec_34_iii_bc(x, y, variant):
    star = tau_star(x, variant)
    m = y.n ** x.n
    if isinstance(star, TauStarFailure):
        return np.zeros((m, 1), dtype=bool), [()], {"construction-failed": m}
    cond_b = _star_image_ok(x, y, variant).all(axis=1)
    cond_c = classify_all_maps(star, y, variant)[CONT]
    return (cond_b != cond_c)[:, None], [()], {"construction-ok": m}


def _check_34_iii_bc(inst, variant):
    f = _map(inst, 0, 0, 1)
    star = tau_star(f.domain, variant)
    if isinstance(star, TauStarFailure):
        return None
    wb = _closure_condition(f, variant)
    wc = map_class_witness(PointMap(star, f.codomain, f.image), CONT, variant)
    if (wb is None) == (wc is None):
        return None
    out = {"(b) holds": wb is None, "(c) holds": wc is None, "tau*": str(star)}
    out.update({f"(b) fails at {k}": v for k, v in (wb or {}).items()})
    if wc is not None:
        out["(c) fails at open set"] = f.codomain.fmt(wc["set"])
        out["(c) preimage"] = f.domain.fmt(wc["preimage"])
    return out


def _vec_35(x, y, variant):
    amc = classify_all_maps(x, y, variant)[AMC]
    hs = [h for h in x.closed_sets if h]
    imgs = map_images(x.n, y.n)
    cols = []
    for h in hs:
        sub, parent = _restriction(x, h)
        idx = _indices(imgs[:, list(parent)], y.n)
        cols.append(~classify_all_maps(sub, y, variant)[AMC][idx])
    bad = np.stack(cols, axis=1) & amc[:, None]
    return bad, [(h,) for h in hs], {}


def _check_35(inst, variant):
    f = _map(inst, 0, 0, 1)
    (h,) = inst.subsets
    if not h or not f.domain.is_closed(h) or map_class_witness(f, AMC, variant) is not None:
        return None
    r = restrict(f, h)
    w = map_class_witness(r, AMC, variant)
    if w is None:
        return None
    return {"H": f.domain.fmt(h), "alpha-m-continuous": True, "restriction alpha-m-continuous": False, **_describe(r, w)}


def _covering_pairs(x: FiniteSpace, variant) -> list[tuple[int, int]]:
    amc = derived_family(x, FamilyKind.ALPHA_M_CLOSED, variant).members
    return [(a, b) for a in amc for b in amc if a and b and a <= b and a | b == x.full]


def _vec_36(x, y, variant):
    pairs = _covering_pairs(x, variant)
    m = y.n ** x.n
    if not pairs:
        return np.zeros((m, 0), dtype=bool), [], {}
    amc = classify_all_maps(x, y, variant)[AMC]
    imgs = map_images(x.n, y.n)
    piece_ok = {}
    for part in {p for pair in pairs for p in pair}:
        sub, parent = _restriction(x, part)
        idx = _indices(imgs[:, list(parent)], y.n)
        piece_ok[part] = classify_all_maps(sub, y, variant)[AMC][idx]
    cols = [piece_ok[a] & piece_ok[b] & ~amc for a, b in pairs]
    return np.stack(cols, axis=1), pairs, {}


def _check_36(inst, variant):
    h = _map(inst, 0, 0, 1)
    x = h.domain
    a, b = inst.subsets
    if not (a and b and a | b == x.full):
        return None
    if not (is_alpha_m_closed(x, a, variant) and is_alpha_m_closed(x, b, variant)):
        return None
    if map_class_witness(restrict(h, a), AMC, variant) or map_class_witness(restrict(h, b), AMC, variant):
        return None
    w = map_class_witness(h, AMC, variant)
    if w is None:
        return None
    return {"A": x.fmt(a), "B": x.fmt(b), "pieces alpha-m-continuous": True, "combined alpha-m-continuous": False, **_describe(h, w)}


def _vec_42(x, y, z, variant):
    f_ok = classify_all_maps(x, y, variant)[AMI]
    g_ok = classify_all_maps(y, z, variant)[AMC]
    comp = _composite_flags(x, y, z, variant, AMC)
    return f_ok[:, None] & g_ok[None, :] & ~comp


def _check_42(inst, variant):
    f, g = _map(inst, 0, 0, 1), _map(inst, 1, 1, 2)
    if map_class_witness(f, AMI, variant) or map_class_witness(g, AMC, variant):
        return None
    w = map_class_witness(compose(f, g), AMC, variant)
    if w is None:
        return None
    return {"f alpha-m-irresolute": True, "g alpha-m-continuous": True, "gof alpha-m-continuous": False, **_describe(compose(f, g), w)}


def _vec_43(x, y, z, variant):
    f_ok = classify_all_maps(x, y, variant)[AMI]
    g_ok = classify_all_maps(y, z, variant)[AMI]
    comp = _composite_flags(x, y, z, variant, AMI)
    return f_ok[:, None] & g_ok[None, :] & ~comp


def _check_43(inst, variant):
    f, g = _map(inst, 0, 0, 1), _map(inst, 1, 1, 2)
    if map_class_witness(f, AMI, variant) or map_class_witness(g, AMI, variant):
        return None
    gf = compose(f, g)
    w = map_class_witness(gf, AMI, variant)
    if w is None:
        return None
    return {"f alpha-m-irresolute": True, "g alpha-m-irresolute": True, "gof alpha-m-irresolute": False, **_describe(gf, w)}


def _surjective(nx: int, ny: int) -> np.ndarray:
    imgs = map_images(nx, ny)
    return np.stack([(imgs == v).any(axis=1) for v in range(ny)], axis=1).all(axis=1)


def _injective(nx: int, ny: int) -> np.ndarray:
    imgs = map_images(nx, ny)
    srt = np.sort(imgs, axis=1)
    return (np.diff(srt, axis=1) != 0).all(axis=1)


def _vec_44_i(x, y, z, variant):
    f_ok = classify_all_maps(x, y, variant)[CONT] & _surjective(x.n, y.n)
    g_bad = ~classify_all_maps(y, z, variant)[AMCM]
    comp = _composite_flags(x, y, z, variant, AMCM)
    return f_ok[:, None] & g_bad[None, :] & comp


def _check_44_i(inst, variant):
    f, g = _map(inst, 0, 0, 1), _map(inst, 1, 1, 2)
    if map_class_witness(compose(f, g), AMCM, variant) is not None:
        return None
    if map_class_witness(f, CONT, variant) is not None or len(set(f.image)) != f.codomain.n:
        return None
    w = map_class_witness(g, AMCM, variant)
    if w is None:
        return None
    return {"gof alpha-m-closed map": True, "f continuous surjective": True, "g alpha-m-closed map": False, **_describe(g, w)}


def _vec_44_ii(g_tag, x, y, z, variant):
    f_bad = ~classify_all_maps(x, y, variant)[AMCM]
    g_ok = classify_all_maps(y, z, variant)[g_tag] & _injective(y.n, z.n)
    comp = _composite_flags(x, y, z, variant, AMCM)
    return f_bad[:, None] & g_ok[None, :] & comp


def _check_44_ii(g_tag, inst, variant):
    f, g = _map(inst, 0, 0, 1), _map(inst, 1, 1, 2)
    if map_class_witness(compose(f, g), AMCM, variant) is not None:
        return None
    if map_class_witness(g, g_tag, variant) is not None or len(set(g.image)) != g.domain.n:
        return None
    w = map_class_witness(f, AMCM, variant)
    if w is None:
        return None
    return {"gof alpha-m-closed map": True, f"g {g_tag.value} injective": True, "f alpha-m-closed map": False, **_describe(f, w)}


# -- set claims -----------------------------------------------------------


def _amc_members(x, variant):
    return derived_family(x, FamilyKind.ALPHA_M_CLOSED, variant).members


def _amc_pairs(x, variant):
    amc = _amc_members(x, variant)
    return [(a, b) for a in amc for b in amc if a <= b]


def _check_intersection(inst, variant):
    x = inst.spaces[0]
    a, b = inst.subsets
    if not (is_alpha_m_closed(x, a, variant) and is_alpha_m_closed(x, b, variant)):
        return None
    if is_alpha_m_closed(x, a & b, variant):
        return None
    return {"A": x.fmt(a), "B": x.fmt(b), "A∩B": x.fmt(a & b), **_amc_detail(x, a & b, variant)}


def _check_union(inst, variant):
    x = inst.spaces[0]
    a, b = inst.subsets
    if not (is_alpha_m_closed(x, a, variant) and is_alpha_m_closed(x, b, variant)):
        return None
    if is_alpha_m_closed(x, a | b, variant):
        return None
    return {"C": x.fmt(a), "D": x.fmt(b), "C∪D": x.fmt(a | b), **_amc_detail(x, a | b, variant)}


def _nested_pairs(x, variant):
    out = []
    for a in _amc_members(x, variant):
        if not a:
            continue
        sub, parent = _restriction(x, a)
        for b in x.subsets():
            if b & ~a == 0 and is_alpha_m_closed(sub, compress(b, parent), variant):
                out.append((a, b))
    return out


def _check_transitive(inst, variant):
    x = inst.spaces[0]
    a, b = inst.subsets
    if not a or b & ~a or not is_alpha_m_closed(x, a, variant):
        return None
    sub, parent = _restriction(x, a)
    if not is_alpha_m_closed(sub, compress(b, parent), variant):
        return None
    if is_alpha_m_closed(x, b, variant):
        return None
    return {"A": x.fmt(a), "B": x.fmt(b), "B alpha-m-closed in A": True, "B alpha-m-closed in X": False, **_amc_detail(x, b, variant)}


def _single(x, variant):
    return [()]


def _check_alpha_topology(inst, variant):
    x = inst.spaces[0]
    err = derived_family(x, FamilyKind.ALPHA_OPEN).topology_violation()
    if err is None:
        return None
    return {"alpha-open family": "{" + ", ".join(x.fmt(m) for m in derived_family(x, FamilyKind.ALPHA_OPEN).members) + "}", "violation": str(err)}


def _check_tau_star(inst, variant):
    x = inst.spaces[0]
    star = tau_star(x, variant)
    if not isinstance(star, TauStarFailure):
        return None
    return {"tau* family": "{" + ", ".join(x.fmt(g) for g in star.family) + "}", "axiom": star.axiom, "witness": [x.fmt(m) for m in star.witness]}


def _all_subsets(x, variant):
    return [(a,) for a in x.subsets()]


def _all_pairs(x, variant):
    return [(a, b) for a in x.subsets() for b in x.subsets() if a <= b]


def _check_star_idempotent(inst, variant):
    x = inst.spaces[0]
    (a,) = inst.subsets
    once = generalized_closure(x, ClosureKind.STAR, a, variant)
    twice = generalized_closure(x, ClosureKind.STAR, once, variant)
    if once == twice:
        return None
    return {"A": x.fmt(a), "cl*(A)": x.fmt(once), "cl*(cl*(A))": x.fmt(twice)}


def _check_star_additive(inst, variant):
    x = inst.spaces[0]
    a, b = inst.subsets
    whole = generalized_closure(x, ClosureKind.STAR, a | b, variant)
    parts = generalized_closure(x, ClosureKind.STAR, a, variant) | generalized_closure(x, ClosureKind.STAR, b, variant)
    if whole == parts:
        return None
    return {"A": x.fmt(a), "B": x.fmt(b), "cl*(A∪B)": x.fmt(whole), "cl*(A)∪cl*(B)": x.fmt(parts)}


def _check_star_closed(inst, variant):
    x = inst.spaces[0]
    (a,) = inst.subsets
    star = generalized_closure(x, ClosureKind.STAR, a, variant)
    if is_alpha_m_closed(x, star, variant):
        return None
    return {"A": x.fmt(a), "cl*(A)": x.fmt(star), **_amc_detail(x, star, variant)}


# -- the worked example ---------------------------------------------------


def example_instance() -> Instance:
    """X = {a,b,c} with {∅,{a},X}; Y = {p,q} with {∅,{p},Y}; f(a)=f(c)=q, f(b)=p."""
    x = validate_topology(3, [0b000, 0b001, 0b111], names="abc")
    y = validate_topology(2, [0b00, 0b01, 0b11], names="pq")
    return Instance((x, y), ((1, 0, 1),), (), (None, None))


def _example_partitions(budget):
    return ["example"]


def _scan_example(key, budget, variant, deadline) -> PartitionResult:
    inst = example_instance()
    detail = _check_example(inst, variant)
    return PartitionResult(checked=1, violation=None if detail is None else (inst, detail))


def _check_example(inst, variant):
    f = _map(inst, 0, 0, 1)
    w_amc = map_class_witness(f, AMC, variant)
    w_cont = map_class_witness(f, CONT, variant)
    if w_amc is None and w_cont is not None:
        return None
    out = {"alpha-m-continuous": w_amc is None, "continuous": w_cont is None}
    if w_amc is not None:
        out.update({f"alpha-m failure {k}": v for k, v in _describe(f, w_amc).items()})
    return out


# -- registry -------------------------------------------------------------

_MAP_UNIVERSE = "all maps between catalog spaces (domain n <= max_domain_n, codomain n <= max_codomain_n)"
_TRIPLE_UNIVERSE = "all map pairs X -> Y -> Z over catalog spaces within the budget"
_H_NOTE = "H ranges over non-empty closed subsets of the domain; the statement's 'closed subset of Y' reading is not checked"
_SUPPLIED_AMCM = "alpha-m-closed map (image of every closed set is alpha-m-closed) is a supplied definition"


def _pair_claim(cid, kind, statement, vec, check, universe=_MAP_UNIVERSE, **kw) -> ClaimSpec:
    return ClaimSpec(cid, kind, statement, universe, partial(_scan_pairs, cid, check, vec), check, _domain_partitions, **kw)


def _triple_claim(cid, statement, vec, check, **kw) -> ClaimSpec:
    return ClaimSpec(
        cid, "composition-law", statement, _TRIPLE_UNIVERSE, partial(_scan_triples, cid, check, vec), check, _domain_partitions, **kw
    )


def _set_claim(cid, kind, statement, instances, check, universe, **kw) -> ClaimSpec:
    return ClaimSpec(cid, kind, statement, universe, partial(_scan_spaces, cid, check, instances), check, _domain_partitions, **kw)


def register_claims() -> list[ClaimSpec]:
    claims = [
        _pair_claim("C-3.2-fwd", "implication-over-maps", "continuous => alpha-m-continuous", _vec_32_fwd, _check_32_fwd),
        _pair_claim(
            "C-3.2-conv",
            "implication-over-maps",
            "alpha-m-continuous => continuous (asserted false; a counterexample is expected)",
            _vec_32_conv,
            _check_32_conv,
            expected="counterexample",
        ),
        _pair_claim(
            "C-3.4-I",
            "equality-of-operators",
            "preimages of closed sets alpha-m-closed <=> preimages of open sets alpha-m-open",
            _vec_34_i,
            _check_34_i,
            fatal=True,
        ),
        _pair_claim(
            "C-3.4-II",
            "implication-over-maps",
            "alpha-m-continuous f => f(cl*(A)) ⊆ cl(f(A)) for every subset A",
            _vec_34_ii,
            _check_34_ii,
            universe=_MAP_UNIVERSE + " x all subsets A of the domain",
        ),
        _pair_claim(
            "C-3.4-III-ab",
            "equality-of-operators",
            "(a) every open V ∋ f(x) has an alpha-m-open U ∋ x with f(U) ⊆ V  <=>  (b) f(cl*(A)) ⊆ cl(f(A)) for all A",
            _vec_34_iii_ab,
            _check_34_iii_ab,
        ),
        _pair_claim(
            "C-3.4-III-bc",
            "construction-validity",
            "(b) f(cl*(A)) ⊆ cl(f(A)) for all A  <=>  (c) f: (X, tau*) -> Y continuous",
            _vec_34_iii_bc,
            _check_34_iii_bc,
            notes=("instances whose tau* family is not a topology are counted as construction-failed, not as violations",),
        ),
        _pair_claim(
            "C-3.5",
            "implication-over-maps",
            "alpha-m-continuous f and closed H => f restricted to H (relative topology) is alpha-m-continuous",
            _vec_35,
            _check_35,
            universe=_MAP_UNIVERSE + " x non-empty closed H of the domain",
            notes=(_H_NOTE,),
        ),
        _set_claim(
            "C-3.5-lemma",
            "implication-over-sets",
            "A, B alpha-m-closed => A ∩ B alpha-m-closed",
            _amc_pairs,
            _check_intersection,
            "all pairs of alpha-m-closed sets of each catalog space",
        ),
        _pair_claim(
            "C-3.6",
            "implication-over-maps",
            "X = A ∪ B with A, B alpha-m-closed, restrictions to A and B alpha-m-continuous => combined map alpha-m-continuous",
            _vec_36,
            _check_36,
            universe=_MAP_UNIVERSE + " x covering pairs (A, B) of non-empty alpha-m-closed sets",
        ),
        _set_claim(
            "C-3.6-lemma-union",
            "implication-over-sets",
            "C, D alpha-m-closed => C ∪ D alpha-m-closed",
            _amc_pairs,
            _check_union,
            "all pairs of alpha-m-closed sets of each catalog space",
        ),
        _set_claim(
            "C-3.6-lemma-trans",
            "implication-over-sets",
            "B ⊆ A ⊆ X, B alpha-m-closed in A, A alpha-m-closed in X => B alpha-m-closed in X",
            _nested_pairs,
            _check_transitive,
            "all nested pairs B ⊆ A with A non-empty alpha-m-closed and B alpha-m-closed in the subspace A",
        ),
        _triple_claim("C-4.2", "f alpha-m-irresolute, g alpha-m-continuous => gof alpha-m-continuous", _vec_42, _check_42),
        _triple_claim("C-4.3", "f, g alpha-m-irresolute => gof alpha-m-irresolute", _vec_43, _check_43),
        _triple_claim(
            "C-4.4-i",
            "gof alpha-m-closed map, f continuous and surjective => g alpha-m-closed map",
            _vec_44_i,
            _check_44_i,
            notes=(_SUPPLIED_AMCM,),
        ),
        _triple_claim(
            "C-4.4-ii",
            "gof alpha-m-closed map, g irresolute and injective => f alpha-m-closed map",
            partial(_vec_44_ii, IRR),
            partial(_check_44_ii, IRR),
            notes=(_SUPPLIED_AMCM, "companion claim C-4.4-ii-amirr assumes g alpha-m-irresolute instead"),
        ),
        _triple_claim(
            "C-4.4-ii-amirr",
            "gof alpha-m-closed map, g alpha-m-irresolute and injective => f alpha-m-closed map",
            partial(_vec_44_ii, AMI),
            partial(_check_44_ii, AMI),
            notes=(_SUPPLIED_AMCM, "companion of C-4.4-ii with the alpha-m-irresolute hypothesis on g"),
        ),
        ClaimSpec(
            "C-ex-3.3",
            "construction-validity",
            "X={a,b,c}, tau={∅,{a},X}; Y={p,q}, sigma={∅,{p},Y}; f(a)=f(c)=q, f(b)=p is alpha-m-continuous and not continuous",
            "the single worked example",
            _scan_example,
            _check_example,
            _example_partitions,
        ),
        _set_claim(
            "C-alpha-topology",
            "construction-validity",
            "the alpha-open sets of every space form a topology",
            _single,
            _check_alpha_topology,
            "every catalog space",
        ),
        _set_claim(
            "C-tau-star-topology",
            "construction-validity",
            "tau* = {G : cl*(X - G) = X - G} is a topology",
            _single,
            _check_tau_star,
            "every catalog space",
        ),
        _set_claim(
            "C-clstar-idempotent",
            "equality-of-operators",
            "cl*(cl*(A)) = cl*(A)",
            _all_subsets,
            _check_star_idempotent,
            "all subsets of every catalog space",
        ),
        _set_claim(
            "C-clstar-additive",
            "equality-of-operators",
            "cl*(A ∪ B) = cl*(A) ∪ cl*(B)",
            _all_pairs,
            _check_star_additive,
            "all subset pairs of every catalog space",
        ),
        _set_claim(
            "C-clstar-closed",
            "construction-validity",
            "cl*(A) is alpha-m-closed",
            _all_subsets,
            _check_star_closed,
            "all subsets of every catalog space",
        ),
    ]
    return sorted(claims, key=lambda c: c.id)


_REGISTRY: dict[str, ClaimSpec] | None = None


def registry() -> dict[str, ClaimSpec]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = {c.id: c for c in register_claims()}
    return _REGISTRY


def get_claim(claim_id: str) -> ClaimSpec:
    try:
        return registry()[claim_id]
    except KeyError:
        raise UnknownClaim(claim_id) from None


def run_claim(claim_id: str, budget: SearchBudget | None = None, variant=AlphaMVariant.ALPHA_OPEN, workers: int = 1) -> ClaimVerdict:
    claim = get_claim(claim_id)
    budget = budget or SearchBudget()
    variant = AlphaMVariant(variant)
    try:
        return search_counterexample(claim, budget, variant, workers)
    except BudgetExceeded:
        return ClaimVerdict(claim_id, Outcome.BUDGET_EXCEEDED, variant.value, budget)


def run_all(
    budget: SearchBudget | None = None,
    variant=AlphaMVariant.ALPHA_OPEN,
    ids: Iterable[str] | None = None,
    workers: int = 1,
) -> list[ClaimVerdict]:
    wanted = sorted(ids) if ids is not None else sorted(registry())
    for cid in wanted:
        get_claim(cid)
    return [run_claim(cid, budget, variant, workers) for cid in wanted]


def replay(verdict: ClaimVerdict) -> dict | None:
    """Re-run the scalar check on a stored witness; equals ``verdict.detail`` when sound."""
    if verdict.witness is None:
        return None
    return get_claim(verdict.claim_id).check(verdict.witness, AlphaMVariant(verdict.variant))


def divergent_claims(by_variant: dict[str, list[ClaimVerdict]]) -> list[str]:
    """Claim ids whose outcome is not the same under every variant."""
    outcomes: dict[str, set] = {}
    for verdicts in by_variant.values():
        for v in verdicts:
            outcomes.setdefault(v.claim_id, set()).add(v.outcome)
    return sorted(cid for cid, seen in outcomes.items() if len(seen) > 1)
