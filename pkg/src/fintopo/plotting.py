"""Figures written next to the delimited reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

_OUTCOME_CODE = {"verified-up-to": 0, "counterexample": 1, "budget-exceeded": 2}
_OUTCOME_COLORS = ["#4c9f70", "#d1495b", "#9a9a9a"]
_META = {"Software": None}


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata=_META)
    plt.close(fig)
    return path


def claim_verdict_grid(report: dict, path: Path) -> Path:
    claims = sorted({d["claim"] for d in report["verdicts"]})
    variants = report["variants"]
    grid = np.full((len(claims), len(variants)), 2)
    counts = {}
    for d in report["verdicts"]:
        i, j = claims.index(d["claim"]), variants.index(d["variant"])
        grid[i, j] = _OUTCOME_CODE[d["outcome"]]
        counts[i, j] = d["instances_checked"]

    fig, ax = plt.subplots(figsize=(2.2 + 1.6 * len(variants), 0.35 * len(claims) + 1.2))
    ax.imshow(grid, cmap=ListedColormap(_OUTCOME_COLORS), vmin=0, vmax=2, aspect="auto")
    for (i, j), n in counts.items():
        ax.text(j, i, f"{n:,}", ha="center", va="center", fontsize=7, color="white")
    ax.set_xticks(range(len(variants)), variants)
    ax.set_yticks(range(len(claims)), claims, fontsize=8)
    ax.xaxis.tick_top()
    b = report["budget"]
    ax.set_title(f"claim verdicts, n <= {b['max_domain_n']} -> n <= {b['max_codomain_n']}", fontsize=9, pad=22)
    handles = [plt.Rectangle((0, 0), 1, 1, color=c) for c in _OUTCOME_COLORS]
    ax.legend(handles, list(_OUTCOME_CODE), loc="upper center", bbox_to_anchor=(0.5, -0.02), ncol=3, fontsize=7, frameon=False)
    return _save(fig, path)


def implication_heatmap(matrix, path: Path) -> Path:
    names = [c.value for c in matrix.classes]
    k = len(names)
    data = np.array([[1 if p is q or matrix.implies(p, q) else 0 for q in matrix.classes] for p in matrix.classes])
    fig, ax = plt.subplots(figsize=(0.42 * k + 2, 0.42 * k + 1.5))
    ax.imshow(data, cmap=ListedColormap(["#f2f2f2", "#2f6690"]), vmin=0, vmax=1)
    ax.set_xticks(range(k), names, rotation=90, fontsize=7)
    ax.set_yticks(range(k), names, fontsize=7)
    ax.set_xlabel("consequent")
    ax.set_ylabel("antecedent")
    ax.set_title(f"implications over all spaces with n <= {matrix.max_n} ({matrix.variant.value})", fontsize=9)
    return _save(fig, path)


def hasse_diagram(matrix, path: Path) -> Path:
    g = matrix.graph()
    cond = nx.condensation(g)
    red = nx.transitive_reduction(cond)
    labels = {b: "\n= ".join(sorted(cond.nodes[b]["members"], key=names_order(matrix))) for b in cond.nodes}
    pos = {}
    for depth, layer in enumerate(nx.topological_generations(red)):
        layer = sorted(layer, key=lambda b: labels[b])
        for i, b in enumerate(layer):
            pos[b] = (i - (len(layer) - 1) / 2, -depth)
    fig, ax = plt.subplots(figsize=(11, 7))
    nx.draw_networkx_edges(red, pos, ax=ax, arrows=True, arrowsize=10, edge_color="#777777", node_size=1800)
    nx.draw_networkx_labels(red, pos, labels=labels, ax=ax, font_size=7, bbox={"fc": "white", "ec": "#2f6690", "boxstyle": "round"})
    ax.set_title(f"set-class implications, n <= {matrix.max_n}, variant {matrix.variant.value} (arrows point to weaker classes)", fontsize=9)
    ax.axis("off")
    return _save(fig, path)


def names_order(matrix):
    order = [c.value for c in matrix.classes]
    return order.index


def topology_counts(rows: list[dict], mode: str, path: Path) -> Path:
    done = [r for r in rows if "count" in r]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar([r["n"] for r in done], [r["count"] for r in done], color="#2f6690")
    ax.set_yscale("log")
    ax.set_xlabel("points")
    ax.set_ylabel("topologies")
    ax.set_title(f"{mode} topologies per ground-set size", fontsize=9)
    for r in done:
        ax.annotate(f"{r['count']:,}", (r["n"], r["count"]), ha="center", va="bottom", fontsize=7)
    return _save(fig, path)
