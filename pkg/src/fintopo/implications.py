"""Implication matrix between set classes, swept over all catalog spaces.

``P => Q`` is reported when no subset of any catalog space with at most
``max_n`` points is in ``P`` but not in ``Q``. Otherwise the first offending
``(space, subset)`` in catalog order is kept as the witness.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np

from .classifiers import SetClass, set_class_table
from .enumeration import catalog
from .operators import AlphaMVariant
from .space import FiniteSpace

MAX_MATRIX_N = 5


@dataclass(frozen=True)
class Witness:
    space_id: tuple[int, int]
    space: FiniteSpace
    subset: int


@dataclass
class ImplicationMatrix:
    max_n: int
    variant: AlphaMVariant
    classes: tuple[SetClass, ...]
    witnesses: dict  # (P, Q) -> Witness, only for non-implications
    spaces_checked: int
    subsets_checked: int

    def implies(self, p, q) -> bool:
        return (SetClass(p), SetClass(q)) not in self.witnesses

    def edges(self) -> list[tuple[SetClass, SetClass]]:
        """Every implication ``P => Q`` with ``P != Q``, in class order."""
        return [(p, q) for p in self.classes for q in self.classes if p is not q and self.implies(p, q)]

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(c.value for c in self.classes)
        g.add_edges_from((p.value, q.value) for p, q in self.edges())
        return g

    def hasse_edges(self) -> set[tuple[str, str]]:
        """Edges surviving transitive reduction of the condensed implication order.

        Equivalent classes are collapsed first; an edge between two members of
        different blocks is kept when the blocks are adjacent in the reduction.
        """
        g = self.graph()
        cond = nx.condensation(g)
        red = nx.transitive_reduction(cond)
        block = cond.graph["mapping"]
        return {(p, q) for p, q in g.edges if block[p] != block[q] and red.has_edge(block[p], block[q])}

    def equivalences(self) -> list[list[str]]:
        blocks = [sorted(c, key=_order) for c in nx.strongly_connected_components(self.graph()) if len(c) > 1]
        return sorted(blocks, key=lambda b: _order(b[0]))


def _order(name: str) -> int:
    return list(SetClass).index(SetClass(name))


def implication_matrix(max_n: int = 4, variant=AlphaMVariant.ALPHA_OPEN, classes=None) -> ImplicationMatrix:
    if not 1 <= max_n <= MAX_MATRIX_N:
        raise ValueError(f"implication matrix supports 1 <= n <= {MAX_MATRIX_N}")
    variant = AlphaMVariant(variant)
    classes = tuple(SetClass(c) for c in (classes or SetClass))
    k = len(classes)
    witnesses: dict = {}
    open_pairs = np.ones((k, k), dtype=bool)
    np.fill_diagonal(open_pairs, False)
    spaces = subsets = 0
    for n in range(1, max_n + 1):
        for i, space in enumerate(catalog(n)):
            spaces += 1
            subsets += 1 << n
            table = set_class_table(space, variant)
            rows = np.stack([table[c] for c in classes])  # (k, 2^n)
            # bad[p, q, a]: subset a is in p but not in q
            bad = rows[:, None, :] & ~rows[None, :, :]
            hit = bad.any(axis=2) & open_pairs
            for p, q in zip(*np.nonzero(hit)):
                first = int(np.argmax(bad[p, q]))
                witnesses[(classes[p], classes[q])] = Witness((n, i), space, first)
            open_pairs &= ~hit
    return ImplicationMatrix(max_n, variant, classes, witnesses, spaces, subsets)


def to_dot(m: ImplicationMatrix) -> str:
    """Directed graph of every implication; Hasse edges are marked ``hasse=true``.

    Non-Hasse edges are drawn dotted so a renderer shows the reduction while the
    full implication set stays in the file.
    """
    hasse = m.hasse_edges()
    lines = [
        "digraph implications {",
        f'  graph [max_n={m.max_n}, variant="{m.variant.value}"];',
        "  rankdir=TB;",
    ]
    lines += [f'  "{c.value}";' for c in m.classes]
    for p, q in m.edges():
        e = (p.value, q.value)
        if m.implies(q, p):
            attrs = 'equivalent=true, hasse=false, dir=both, style=dashed'
        elif e in hasse:
            attrs = "hasse=true"
        else:
            attrs = "hasse=false, style=dotted"
        lines.append(f'  "{p.value}" -> "{q.value}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot_edges(text: str) -> set[tuple[str, str]]:
    """Edge set of a graph written by :func:`to_dot`."""
    out = set()
    for line in text.splitlines():
        line = line.strip()
        if "->" in line:
            lhs, rhs = line.split("->", 1)
            out.add((lhs.strip().strip('"'), rhs.split("[", 1)[0].strip().strip('";')))
    return out
