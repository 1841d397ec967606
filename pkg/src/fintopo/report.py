"""Machine-readable (JSON) and tab-delimited renderings of command results.

Every JSON report carries ``format_version``; the layout is described in
``docs/report-format.md``. Output is deterministic: no timestamps, no timings,
stable key and row order.
"""

from __future__ import annotations

import json

from . import __version__
from .claims import ClaimSpec, divergent_claims, get_claim
from .classifiers import (
    SUPPLIED_MAP_CLASSES,
    SUPPLIED_SET_CLASSES,
    ClassVector,
    MapClass,
    SetClass,
)
from .documents import SpaceDocument, instance_doc, subset_names
from .enumeration import ClaimVerdict, SearchBudget
from .implications import ImplicationMatrix
from .space import FiniteSpace, PointMap

FORMAT_VERSION = 1


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _header(command: str, **extra) -> dict:
    return {"format_version": FORMAT_VERSION, "tool_version": __version__, "command": command, **extra}


# -- classify -------------------------------------------------------------


def _set_row(space: FiniteSpace, mask: int, cv: ClassVector) -> dict:
    return {
        "object": space.fmt(mask),
        "subset": subset_names(space, mask),
        "classes": {c.value: c in cv for c in SetClass},
        "witnesses": {c.value: space.fmt(u) for c, u in sorted(cv.witnesses.items(), key=lambda kv: list(SetClass).index(kv[0]))},
    }


def _map_row(f: PointMap, cv: ClassVector) -> dict:
    x, y = f.domain, f.codomain
    wits = {}
    for c in MapClass:
        w = cv.witnesses.get(c)
        if w is None:
            continue
        if "image" in w:
            wits[c.value] = {"closed set": x.fmt(w["set"]), "image": y.fmt(w["image"])}
        else:
            wits[c.value] = {"codomain set": y.fmt(w["set"]), "preimage": x.fmt(w["preimage"])}
        if w.get("inner") is not None:
            wits[c.value]["escaping U"] = (y if "image" in w else x).fmt(w["inner"])
    return {"object": str(f), "classes": {c.value: c in cv for c in MapClass}, "witnesses": wits}


def classify_subsets_report(space: FiniteSpace, rows: list[tuple[int, ClassVector]], variant) -> dict:
    return _header(
        "classify",
        variant=variant.value,
        target="subsets",
        supplied_classes=sorted(c.value for c in SUPPLIED_SET_CLASSES),
        space=SpaceDocument.from_space(space).as_dict(),
        rows=[_set_row(space, m, cv) for m, cv in rows],
    )


def classify_map_report(f: PointMap, cv: ClassVector, variant) -> dict:
    return _header(
        "classify",
        variant=variant.value,
        target="map",
        supplied_classes=sorted(c.value for c in SUPPLIED_SET_CLASSES | SUPPLIED_MAP_CLASSES),
        space=SpaceDocument.from_space(f.domain).as_dict(),
        codomain=SpaceDocument.from_space(f.codomain).as_dict(),
        rows=[_map_row(f, cv)],
    )


def classify_tsv(doc: dict) -> str:
    tags = list(doc["rows"][0]["classes"]) if doc["rows"] else []
    out = ["\t".join(["object", *tags, "witnesses"])]
    for row in doc["rows"]:
        wits = "; ".join(f"{k}: {_flat(v)}" for k, v in row["witnesses"].items())
        out.append("\t".join([row["object"], *("1" if row["classes"][t] else "0" for t in tags), wits]))
    return "\n".join(out) + "\n"


def _flat(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={x}" for k, x in v.items())
    return f"U={v}"


# -- claims ---------------------------------------------------------------


def verdict_doc(v: ClaimVerdict, claim: ClaimSpec | None = None) -> dict:
    claim = claim or get_claim(v.claim_id)
    doc = {
        "claim": v.claim_id,
        "kind": claim.kind,
        "statement": claim.statement,
        "universe": claim.universe,
        "variant": v.variant,
        "outcome": v.outcome.value,
        "instances_checked": v.checked,
    }
    if claim.expected:
        doc["expected"] = claim.expected
    if claim.notes:
        doc["notes"] = list(claim.notes)
    if v.stats:
        doc["stats"] = dict(sorted(v.stats.items()))
    if v.witness is not None:
        doc["witness"] = instance_doc(v.witness)
        doc["detail"] = v.detail
    return doc


def claims_report(by_variant: dict[str, list[ClaimVerdict]], budget: SearchBudget) -> dict:
    verdicts = []
    for variant in sorted(by_variant):
        verdicts += [verdict_doc(v) for v in by_variant[variant]]
    verdicts.sort(key=lambda d: (d["claim"], d["variant"]))
    fatal = sorted(
        {d["claim"] for d in verdicts if d["outcome"] == "counterexample" and get_claim(d["claim"]).fatal}
    )
    return _header(
        "check-claims",
        variants=sorted(by_variant),
        budget=budget.as_dict(),
        verdicts=verdicts,
        variant_divergence=divergent_claims(by_variant) if len(by_variant) > 1 else [],
        fatal_failures=fatal,
    )


def claims_tsv(doc: dict) -> str:
    out = ["\t".join(["claim", "variant", "outcome", "instances", "witness", "detail"])]
    for d in doc["verdicts"]:
        wit = ""
        if "witness" in d:
            w = d["witness"]
            spaces = " | ".join("{" + ", ".join("{" + ",".join(o) + "}" for o in s["opens"]) + "}" for s in w["spaces"])
            maps = " | ".join(", ".join(f"{a}->{b}" for a, b in m.items()) for m in w["maps"])
            subs = " | ".join("{" + ",".join(s) + "}" for s in w["subsets"])
            wit = "; ".join(p for p in (f"spaces {spaces}", f"maps {maps}" if maps else "", f"subsets {subs}" if subs else "") if p)
        detail = "; ".join(f"{k}={v}" for k, v in (d.get("detail") or {}).items())
        out.append("\t".join([d["claim"], d["variant"], d["outcome"], str(d["instances_checked"]), wit, detail]))
    if doc["variant_divergence"]:
        out.append("# outcome differs between variants: " + ", ".join(doc["variant_divergence"]))
    if doc["fatal_failures"]:
        out.append("# FATAL (implementation bug): " + ", ".join(doc["fatal_failures"]))
    return "\n".join(out) + "\n"


# -- implication matrix ---------------------------------------------------


def matrix_report(m: ImplicationMatrix) -> dict:
    hasse = m.hasse_edges()
    pairs = []
    for p in m.classes:
        for q in m.classes:
            if p is q:
                continue
            entry = {"from": p.value, "to": q.value, "implies": m.implies(p, q)}
            if m.implies(p, q):
                entry["hasse"] = (p.value, q.value) in hasse
            else:
                w = m.witnesses[(p, q)]
                entry["witness"] = {
                    "catalog_id": list(w.space_id),
                    "space": SpaceDocument.from_space(w.space).as_dict(),
                    "subset": subset_names(w.space, w.subset),
                }
            pairs.append(entry)
    return _header(
        "implication-matrix",
        variant=m.variant.value,
        max_n=m.max_n,
        spaces_checked=m.spaces_checked,
        subsets_checked=m.subsets_checked,
        supplied_classes=sorted(c.value for c in SUPPLIED_SET_CLASSES),
        equivalent_classes=m.equivalences(),
        pairs=pairs,
    )


def matrix_tsv(m: ImplicationMatrix) -> str:
    names = [c.value for c in m.classes]
    out = ["\t".join(["implies", *names])]
    for p in m.classes:
        cells = []
        for q in m.classes:
            cells.append("=" if p is q else ("1" if m.implies(p, q) else "0"))
        out.append("\t".join([p.value, *cells]))
    return "\n".join(out) + "\n"


# -- enumerate ------------------------------------------------------------


def enumerate_report(rows: list[dict], mode: str, listing: dict | None = None) -> dict:
    doc = _header("enumerate", mode=mode, counts=rows)
    if listing is not None:
        doc["spaces"] = listing
    return doc


def enumerate_tsv(doc: dict) -> str:
    out = ["n\tmode\tcount\toutcome"]
    out += [f"{r['n']}\t{doc['mode']}\t{r.get('count', '')}\t{r['outcome']}" for r in doc["counts"]]
    for n, spaces in (doc.get("spaces") or {}).items():
        for i, opens in enumerate(spaces):
            out.append(f"# n={n} #{i}: " + "{" + ", ".join("{" + ",".join(o) + "}" for o in opens) + "}")
    return "\n".join(out) + "\n"
