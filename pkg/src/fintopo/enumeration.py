"""Exhaustive enumeration of finite topologies and maps, plus the search driver.

Labeled topologies on ``n`` points are in bijection with preorders on ``n``
points: a topology is pinned down by the smallest open neighbourhood ``U_x`` of
each point, and ``y ∈ U_x ⇒ U_y ⊆ U_x``. The production generator grows these
neighbourhood vectors one point at a time and closes each one under union.
``naive_topologies`` scans every subset family instead and is only meant as an
oracle for ``n <= 4``.
"""

from __future__ import annotations

import hashlib
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import permutations, product
from pathlib import Path
from typing import Any, Callable, Iterator, Sequence

import numpy as np

from .space import FiniteSpace, PointMap, full_mask, validate_topology

log = logging.getLogger(__name__)

MAX_ENUM_N = 7
CACHE_FORMAT_VERSION = 1
CACHE_ENV = "FINTOPO_CACHE_DIR"


class BudgetExceeded(RuntimeError):
    pass


class Mode(str, Enum):
    LABELED = "labeled"
    HOMEO = "homeo"


@dataclass(frozen=True)
class TopologyCatalog:
    n: int
    mode: Mode
    entries: tuple[FiniteSpace, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> FiniteSpace:
        return self.entries[i]


def _deadline_check(deadline: float | None) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("wall-clock limit reached")


# -- production generator -------------------------------------------------


def _extend(nbhds: tuple[int, ...], k: int) -> Iterator[tuple[int, ...]]:
    """All ways to add point ``k`` to a preorder given by neighbourhood masks."""
    old = (1 << k) - 1
    # down-closed candidate sets: every member's neighbourhood stays inside
    downs = [d for d in range(old + 1) if all(nbhds[y] & ~d == 0 for y in range(k) if d >> y & 1)]
    # up-closed: x in up and x <= z imply z in up
    ups = [
        u
        for u in range(old + 1)
        if all(u >> z & 1 for z in range(k) for x in range(k) if u >> x & 1 and nbhds[z] >> x & 1)
    ]
    bit = 1 << k
    for d in downs:
        for u in ups:
            if any(u >> x & 1 and d & ~nbhds[x] for x in range(k)):
                continue
            new = list(nbhds)
            for x in range(k):
                if u >> x & 1:
                    new[x] |= bit
            new.append(d | bit)
            yield tuple(new)


def _opens_from_neighbourhoods(nbhds: Sequence[int]) -> tuple[int, ...]:
    opens = {0}
    for u in nbhds:
        opens |= {o | u for o in opens}
    return tuple(sorted(opens))


def _catalog_key(opens: tuple[int, ...]):
    return (len(opens), opens)


def generate_labeled(n: int, deadline: float | None = None) -> list[tuple[int, ...]]:
    """Sorted opens lists of every labeled topology on ``n`` points."""
    layer = [()]
    for k in range(n):
        nxt = []
        for i, nb in enumerate(layer):
            if i & 0x3FF == 0:
                _deadline_check(deadline)
            nxt.extend(_extend(nb, k))
        layer = nxt
    out = []
    for i, nb in enumerate(layer):
        if i & 0x3FF == 0:
            _deadline_check(deadline)
        out.append(_opens_from_neighbourhoods(nb))
    out.sort(key=_catalog_key)
    return out


def naive_topologies(n: int) -> list[tuple[int, ...]]:
    """Oracle: scan every family of subsets containing the empty and full sets."""
    if n > 4:
        raise ValueError("the naive scan is only feasible for n <= 4")
    full = full_mask(n)
    middle = list(range(1, full))
    found = []
    for choice in range(1 << len(middle)):
        fam = {0, full}
        fam.update(m for i, m in enumerate(middle) if choice >> i & 1)
        if all(a | b in fam and a & b in fam for a in fam for b in fam):
            found.append(tuple(sorted(fam)))
    found.sort(key=_catalog_key)
    return found


# -- homeomorphism classes ------------------------------------------------


@lru_cache(maxsize=None)
def _permutation_table(n: int) -> np.ndarray:
    """``table[p, mask]`` = image of ``mask`` under the ``p``-th permutation."""
    perms = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
    masks = np.arange(1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)) & 1  # (2^n, n)
    table = bits @ (1 << perms).T  # (2^n, n!)
    return np.ascontiguousarray(table.T)


def canonical_form(opens: Sequence[int], n: int) -> tuple[int, ...]:
    """Lexicographically least sorted opens list over all point permutations."""
    rows = np.sort(_permutation_table(n)[:, np.asarray(opens, dtype=np.int64)], axis=1)
    best = np.lexsort(rows.T[::-1])[0]
    return tuple(int(v) for v in rows[best])


def is_homeomorphic(a: FiniteSpace, b: FiniteSpace) -> bool:
    return a.n == b.n and len(a.opens) == len(b.opens) and canonical_form(a.opens, a.n) == canonical_form(b.opens, b.n)


# -- disk cache -----------------------------------------------------------


def cache_dir(explicit: str | os.PathLike | None = None) -> Path | None:
    path = explicit or os.environ.get(CACHE_ENV)
    return Path(path) if path else None


def _cache_path(root: Path, n: int, mode: Mode) -> Path:
    return root / f"topologies-n{n}-{mode.value}-v{CACHE_FORMAT_VERSION}.txt"


def _encode(entries: Sequence[tuple[int, ...]], n: int, mode: Mode) -> str:
    lines = [f"fintopo-catalog version={CACHE_FORMAT_VERSION} n={n} mode={mode.value} count={len(entries)}"]
    lines.extend(",".join(f"{m:x}" for m in opens) for opens in entries)
    body = "\n".join(lines) + "\n"
    return body + f"sha256={hashlib.sha256(body.encode()).hexdigest()}\n"


def _decode(text: str, n: int, mode: Mode) -> list[tuple[int, ...]] | None:
    """Parsed entries, or ``None`` if the file is corrupt or stale."""
    body, sep, trailer = text.rpartition("sha256=")
    if not sep or hashlib.sha256(body.encode()).hexdigest() != trailer.strip():
        return None
    lines = body.splitlines()
    header = f"fintopo-catalog version={CACHE_FORMAT_VERSION} n={n} mode={mode.value} count={len(lines) - 1}"
    if not lines or lines[0] != header:
        return None
    try:
        return [tuple(int(tok, 16) for tok in line.split(",")) for line in lines[1:]]
    except ValueError:
        return None


def write_cache(root: Path, n: int, mode: Mode, entries: Sequence[tuple[int, ...]]) -> Path:
    root.mkdir(parents=True, exist_ok=True)
    path = _cache_path(root, n, mode)
    tmp = path.with_name(f"{path.name}.{os.getpid()}.tmp")
    tmp.write_text(_encode(entries, n, mode))
    os.replace(tmp, path)
    return path


def read_cache(root: Path, n: int, mode: Mode) -> list[tuple[int, ...]] | None:
    path = _cache_path(root, n, mode)
    if not path.exists():
        return None
    entries = _decode(path.read_text(), n, mode)
    if entries is None:
        log.warning("discarding corrupt topology cache %s", path)
    return entries


# -- catalogs -------------------------------------------------------------


def _compute(n: int, mode: Mode, deadline: float | None) -> list[tuple[int, ...]]:
    labeled = generate_labeled(n, deadline)
    if mode is Mode.LABELED:
        return labeled
    reps = set()
    for i, opens in enumerate(labeled):
        if i & 0xFF == 0:
            _deadline_check(deadline)
        reps.add(canonical_form(opens, n))
    return sorted(reps, key=_catalog_key)


def enumerate_topologies(
    n: int,
    mode: Mode | str = Mode.LABELED,
    *,
    wall_clock: float | None = None,
    cache: str | os.PathLike | None = None,
) -> TopologyCatalog:
    """Every topology on ``n`` points (one per homeomorphism class in ``homeo`` mode)."""
    mode = Mode(mode)
    if not 1 <= n <= MAX_ENUM_N:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}")
    root = cache_dir(cache)
    entries = read_cache(root, n, mode) if root else None
    if entries is None:
        deadline = time.monotonic() + wall_clock if wall_clock else None
        entries = _compute(n, mode, deadline)
        if root:
            write_cache(root, n, mode, entries)
    return TopologyCatalog(n, mode, tuple(FiniteSpace(n, opens) for opens in entries))


@lru_cache(maxsize=None)
def catalog(n: int, mode: Mode = Mode.LABELED) -> TopologyCatalog:
    """In-process memoized catalog (no disk cache, no wall-clock limit)."""
    return enumerate_topologies(n, mode)


def enumerate_maps(x: FiniteSpace, y: FiniteSpace) -> Iterator[PointMap]:
    for img in product(range(y.n), repeat=x.n):
        yield PointMap(x, y, img)


def validate_catalog(cat: TopologyCatalog) -> None:
    for space in cat:
        validate_topology(space.n, space.opens)


# -- search driver --------------------------------------------------------


@dataclass(frozen=True)
class SearchBudget:
    max_domain_n: int = 3
    max_codomain_n: int = 3
    max_witness_spaces: int | None = None
    wall_clock: float | None = None

    def __post_init__(self):
        for name in ("max_domain_n", "max_codomain_n"):
            v = getattr(self, name)
            if not 1 <= v <= MAX_ENUM_N:
                raise ValueError(f"{name} must be in 1..{MAX_ENUM_N}, got {v}")
        if self.max_witness_spaces is not None and self.max_witness_spaces < 1:
            raise ValueError("max_witness_spaces must be >= 1")
        if self.wall_clock is not None and self.wall_clock <= 0:
            raise ValueError("wall_clock must be positive")

    def as_dict(self) -> dict:
        return {
            "max_domain_n": self.max_domain_n,
            "max_codomain_n": self.max_codomain_n,
            "max_witness_spaces": self.max_witness_spaces,
        }


def universe(max_n: int, budget: SearchBudget) -> list[tuple[tuple[int, int], FiniteSpace]]:
    """``((n, index), space)`` for every catalog space with at most ``max_n`` points."""
    out = []
    for n in range(1, max_n + 1):
        for i, space in enumerate(catalog(n)):
            if budget.max_witness_spaces is not None and i >= budget.max_witness_spaces:
                break
            out.append(((n, i), space))
    return out


@dataclass(frozen=True)
class Instance:
    """One point of a claim's search universe.

    ``space_ids`` are ``(n, catalog index)`` pairs (``None`` for hand-built
    spaces); ``maps`` are image arrays; ``subsets`` are masks whose meaning is
    claim-specific.
    """

    spaces: tuple[FiniteSpace, ...]
    maps: tuple[tuple[int, ...], ...] = ()
    subsets: tuple[int, ...] = ()
    space_ids: tuple[tuple[int, int] | None, ...] | None = None


@dataclass
class PartitionResult:
    checked: int = 0
    violation: tuple[Instance, dict] | None = None
    stats: dict = field(default_factory=dict)


class Outcome(str, Enum):
    VERIFIED = "verified-up-to"
    COUNTEREXAMPLE = "counterexample"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass
class ClaimVerdict:
    claim_id: str
    outcome: Outcome
    variant: str
    budget: SearchBudget
    checked: int = 0
    witness: Instance | None = None
    detail: dict | None = None
    stats: dict = field(default_factory=dict)


def _tag(variant) -> str:
    return getattr(variant, "value", variant)


def _run_partition(scan: Callable, key: Any, budget: SearchBudget, variant, deadline: float | None) -> PartitionResult:
    return scan(key, budget, variant, deadline)


def search_counterexample(claim, budget: SearchBudget, variant, workers: int = 1) -> ClaimVerdict:
    """Scan ``claim``'s universe partition by partition; first witness wins.

    ``claim`` needs ``id``, ``partitions(budget)`` and a module-level
    ``scan(key, budget, variant, deadline) -> PartitionResult``. Partitions are
    visited in order; with several workers every partition is scanned and the
    results after the first violating partition are dropped, so the verdict
    (witness, counts, stats) matches the sequential run exactly.
    """
    deadline = time.monotonic() + budget.wall_clock if budget.wall_clock else None
    keys = list(claim.partitions(budget))
    results: list[PartitionResult] = []
    if workers <= 1 or len(keys) <= 1:
        for key in keys:
            res = claim.scan(key, budget, variant, deadline)
            results.append(res)
            if res.violation is not None:
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_partition, claim.scan, k, budget, variant, deadline) for k in keys]
            for fut in futures:
                res = fut.result()
                results.append(res)
                if res.violation is not None:
                    break
            for fut in futures:
                fut.cancel()
    checked = sum(r.checked for r in results)
    stats: dict = {}
    for r in results:
        for k, v in r.stats.items():
            stats[k] = stats.get(k, 0) + v
    last = results[-1] if results else None
    if last is not None and last.violation is not None:
        inst, detail = last.violation
        return ClaimVerdict(claim.id, Outcome.COUNTEREXAMPLE, _tag(variant), budget, checked, inst, detail, stats)
    return ClaimVerdict(claim.id, Outcome.VERIFIED, _tag(variant), budget, checked, stats=stats)
