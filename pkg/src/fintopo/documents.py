"""Space and map files, subset literals, and witness (de)serialization.

Space files are line-oriented text::

    # the three-point space from the worked example
    points: a b c
    open: {}
    open: {a}
    open: {a, b, c}

The JSON form ``{"points": [...], "opens": [[...], ...]}`` is accepted too; it is
what reports embed. Map files list one assignment per line, ``a -> q``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .enumeration import Instance
from .space import FiniteSpace, TopologyError, points_of, validate_topology


class ParseError(ValueError):
    def __init__(self, msg: str, source: str = "<input>", line: int | None = None, col: int | None = None):
        self.source, self.line, self.col = source, line, col
        where = source if line is None else f"{source}:{line}:{col or 1}"
        super().__init__(f"{where}: {msg}")


class ValidationError(ValueError):
    """The parsed family is not a topology; the message names the witness."""


_NAME = re.compile(r"[A-Za-z0-9_.']+")


@dataclass
class SpaceDocument:
    points: list[str]
    opens: list[list[str]]

    @classmethod
    def from_space(cls, space: FiniteSpace) -> "SpaceDocument":
        names = space.point_names
        return cls(list(names), [[names[i] for i in points_of(u)] for u in space.opens])

    def to_space(self) -> FiniteSpace:
        index = {p: i for i, p in enumerate(self.points)}
        family = []
        for members in self.opens:
            mask = 0
            for p in members:
                if p not in index:
                    raise ParseError(f"open set names unknown point {p!r}")
                mask |= 1 << index[p]
            family.append(mask)
        try:
            return validate_topology(len(self.points), family, self.points)
        except TopologyError as exc:
            raise ValidationError(f"not a topology: {exc}") from exc

    def as_dict(self) -> dict:
        return {"points": list(self.points), "opens": [list(o) for o in self.opens]}

    def to_text(self) -> str:
        lines = ["points: " + " ".join(self.points)]
        lines += ["open: {" + ", ".join(o) + "}" for o in self.opens]
        return "\n".join(lines) + "\n"


def _split_braced(text: str, source: str, lineno: int, col: int) -> list[str]:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError(f"expected a braced set like {{a, b}}, got {body!r}", source, lineno, col)
    inner = body[1:-1].replace(",", " ").split()
    for tok in inner:
        if not _NAME.fullmatch(tok):
            raise ParseError(f"bad point name {tok!r}", source, lineno, col)
    return inner


def parse_space_text(text: str, source: str = "<input>") -> SpaceDocument:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, source, exc.lineno, exc.colno) from exc
        try:
            return _checked(SpaceDocument(list(data["points"]), [list(o) for o in data["opens"]]), source, {})
        except (KeyError, TypeError) as exc:
            raise ParseError(f"JSON space needs 'points' and 'opens': {exc}", source) from exc

    points: list[str] | None = None
    opens: list[list[str]] = []
    where: dict[int, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        key, sep, value = line.partition(":")
        col = len(key) + 2
        key = key.strip()
        if not sep:
            raise ParseError("expected 'points:' or 'open:'", source, lineno, 1)
        if key == "points":
            if points is not None:
                raise ParseError("duplicate 'points:' line", source, lineno, 1)
            points = value.split()
            for tok in points:
                if not _NAME.fullmatch(tok):
                    raise ParseError(f"bad point name {tok!r}", source, lineno, col)
            if len(set(points)) != len(points):
                raise ParseError("point names must be unique", source, lineno, col)
        elif key == "open":
            where[len(opens)] = (lineno, col)
            opens.append(_split_braced(value, source, lineno, col))
        else:
            raise ParseError(f"unknown key {key!r}", source, lineno, 1)
    if points is None:
        raise ParseError("missing 'points:' line", source)
    return _checked(SpaceDocument(points, opens), source, where)


def _checked(doc: SpaceDocument, source: str, where: dict) -> SpaceDocument:
    known = set(doc.points)
    for i, members in enumerate(doc.opens):
        for p in members:
            if p not in known:
                line, col = where.get(i, (None, None))
                raise ParseError(f"unknown point {p!r}", source, line, col)
    return doc


def load_space(path: str | Path) -> FiniteSpace:
    path = Path(path)
    return parse_space_text(path.read_text(), str(path)).to_space()


def parse_subset(text: str, space: FiniteSpace, source: str = "<subset>") -> int:
    body = text.strip()
    if not body.startswith("{"):
        body = "{" + body + "}"
    names = _split_braced(body, source, 1, 1)
    index = {p: i for i, p in enumerate(space.point_names)}
    mask = 0
    for p in names:
        if p not in index:
            raise ParseError(f"unknown point {p!r}", source, 1, 1)
        mask |= 1 << index[p]
    return mask


def parse_map_text(text: str, domain: FiniteSpace, codomain: FiniteSpace, source: str = "<map>") -> tuple[int, ...]:
    dom = {p: i for i, p in enumerate(domain.point_names)}
    cod = {p: i for i, p in enumerate(codomain.point_names)}
    image: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for part in line.split(","):
            if not part.strip():
                continue
            src, arrow, dst = part.partition("->")
            src, dst = src.strip(), dst.strip()
            if not arrow:
                raise ParseError(f"expected 'x -> y', got {part.strip()!r}", source, lineno, 1)
            if src not in dom:
                raise ParseError(f"unknown domain point {src!r}", source, lineno, 1)
            if dst not in cod:
                raise ParseError(f"unknown codomain point {dst!r}", source, lineno, raw.find("->") + 3)
            if dom[src] in image:
                raise ParseError(f"point {src!r} assigned twice", source, lineno, 1)
            image[dom[src]] = cod[dst]
    missing = [p for p, i in dom.items() if i not in image]
    if missing:
        raise ParseError(f"no image given for {', '.join(missing)}", source)
    return tuple(image[i] for i in range(domain.n))


def map_to_text(img, domain: FiniteSpace, codomain: FiniteSpace) -> str:
    return "".join(f"{domain.point_names[x]} -> {codomain.point_names[y]}\n" for x, y in enumerate(img))


# -- witnesses ------------------------------------------------------------


def subset_names(space: FiniteSpace, mask: int) -> list[str]:
    return [space.point_names[i] for i in points_of(mask)]


def instance_doc(inst: Instance) -> dict:
    """Self-contained JSON form of a claim instance; map ``k`` runs from space ``k`` to ``k + 1``."""
    spaces = inst.spaces
    return {
        "spaces": [SpaceDocument.from_space(s).as_dict() for s in spaces],
        "catalog_ids": [list(sid) if sid is not None else None for sid in (inst.space_ids or [None] * len(spaces))],
        "maps": [
            {spaces[k].point_names[x]: spaces[k + 1].point_names[y] for x, y in enumerate(img)}
            for k, img in enumerate(inst.maps)
        ],
        "subsets": [subset_names(spaces[0], m) for m in inst.subsets],
    }


def instance_from_doc(doc: dict) -> Instance:
    spaces = tuple(SpaceDocument(d["points"], d["opens"]).to_space() for d in doc["spaces"])
    maps = []
    for k, assign in enumerate(doc["maps"]):
        cod = {p: i for i, p in enumerate(spaces[k + 1].point_names)}
        maps.append(tuple(cod[assign[p]] for p in spaces[k].point_names))
    index = {p: i for i, p in enumerate(spaces[0].point_names)}
    subsets = tuple(sum(1 << index[p] for p in names) for names in doc["subsets"])
    ids = tuple(tuple(s) if s is not None else None for s in doc.get("catalog_ids", [None] * len(spaces)))
    return Instance(spaces, tuple(maps), subsets, ids)
