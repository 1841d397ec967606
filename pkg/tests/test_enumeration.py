import itertools

import networkx as nx
import pytest

from fintopo.enumeration import (
    MAX_ENUM_N,
    BudgetExceeded,
    Mode,
    Outcome,
    PartitionResult,
    SearchBudget,
    canonical_form,
    catalog,
    enumerate_maps,
    enumerate_topologies,
    generate_labeled,
    is_homeomorphic,
    naive_topologies,
    read_cache,
    search_counterexample,
    universe,
    validate_catalog,
    write_cache,
)
from fintopo.space import FiniteSpace, discrete, indiscrete

# OEIS A000798 / A001930
LABELED = {1: 1, 2: 4, 3: 29, 4: 355, 5: 6942, 6: 209527}
HOMEO = {1: 1, 2: 3, 3: 9, 4: 33, 5: 139, 6: 718}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_labeled_counts(n):
    cat = catalog(n)
    assert len(cat) == LABELED[n]
    assert len(set(cat)) == len(cat)


@pytest.mark.slow
def test_labeled_count_six():
    assert len(generate_labeled(6)) == LABELED[6]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_naive_oracle_agrees(n):
    assert set(naive_topologies(n)) == set(generate_labeled(n))


def test_naive_oracle_refuses_large_n():
    with pytest.raises(ValueError):
        naive_topologies(5)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_homeo_counts(n):
    assert len(catalog(n, Mode.HOMEO)) == HOMEO[n]


@pytest.mark.slow
def test_homeo_count_six():
    assert len(enumerate_topologies(6, Mode.HOMEO)) == HOMEO[6]


def test_catalog_is_valid():
    for n in range(1, 5):
        validate_catalog(catalog(n))
        validate_catalog(catalog(n, Mode.HOMEO))


def test_catalog_order_is_stable():
    assert catalog(2).entries[0] == indiscrete(2)
    assert catalog(2).entries[-1] == discrete(2)
    assert [s.opens for s in catalog(4)] == [s.opens for s in enumerate_topologies(4)]


def test_enumeration_bounds():
    with pytest.raises(ValueError):
        enumerate_topologies(0)
    with pytest.raises(ValueError):
        enumerate_topologies(MAX_ENUM_N + 1)


def _specialization_graph(space):
    g = nx.DiGraph()
    g.add_nodes_from(range(space.n))
    for x, u in enumerate(space.minimal_neighbourhoods):
        g.add_edges_from((x, y) for y in range(space.n) if u >> y & 1)
    return g


@pytest.mark.parametrize("n", [2, 3, 4])
def test_homeo_classes_match_graph_isomorphism(n):
    reps = list(catalog(n, Mode.HOMEO))
    graphs = [_specialization_graph(r) for r in reps]
    for i, j in itertools.combinations(range(len(reps)), 2):
        assert not nx.is_isomorphic(graphs[i], graphs[j])
    for s in catalog(n):
        g = _specialization_graph(s)
        hits = [k for k, h in enumerate(graphs) if nx.is_isomorphic(g, h)]
        assert len(hits) == 1
        assert canonical_form(s.opens, n) == reps[hits[0]].opens


def test_is_homeomorphic_examples(ex_x):
    relabeled = FiniteSpace(3, (0, 0b100, 0b111))
    assert is_homeomorphic(ex_x, relabeled)
    assert not is_homeomorphic(ex_x, indiscrete(3))
    assert not is_homeomorphic(discrete(2), discrete(3))


# -- disk cache -----------------------------------------------------------


def test_cache_round_trip(tmp_path):
    cat = enumerate_topologies(3, cache=tmp_path)
    files = list(tmp_path.iterdir())
    assert [f.name for f in files] == ["topologies-n3-labeled-v1.txt"]
    assert read_cache(tmp_path, 3, Mode.LABELED) == [s.opens for s in cat]
    assert enumerate_topologies(3, cache=tmp_path) == cat


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("FINTOPO_CACHE_DIR", str(tmp_path))
    enumerate_topologies(2, Mode.HOMEO)
    assert (tmp_path / "topologies-n2-homeo-v1.txt").exists()


def test_corrupt_cache_is_regenerated(tmp_path, caplog):
    enumerate_topologies(3, cache=tmp_path)
    path = tmp_path / "topologies-n3-labeled-v1.txt"
    path.write_text(path.read_text()[:200])  # truncated mid-write
    assert read_cache(tmp_path, 3, Mode.LABELED) is None
    assert len(enumerate_topologies(3, cache=tmp_path)) == 29
    assert read_cache(tmp_path, 3, Mode.LABELED) is not None


def test_tampered_body_fails_checksum(tmp_path):
    entries = [(0, 1), (0, 3)]
    path = write_cache(tmp_path, 1, Mode.LABELED, entries)
    text = path.read_text()
    path.write_text(text.replace("0,3", "0,2"))
    assert read_cache(tmp_path, 1, Mode.LABELED) is None


def test_wall_clock_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_topologies(6, wall_clock=1e-6)


# -- maps and universe ----------------------------------------------------


def test_enumerate_maps_order(ex_x, ex_y):
    maps = list(enumerate_maps(ex_x, ex_y))
    assert len(maps) == 8
    assert maps[0].image == (0, 0, 0)
    assert maps[1].image == (0, 0, 1)
    assert maps[-1].image == (1, 1, 1)


def test_universe_and_budget():
    assert len(universe(3, SearchBudget())) == 1 + 4 + 29
    capped = universe(3, SearchBudget(max_witness_spaces=2))
    assert [sid for sid, _ in capped] == [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1)]
    with pytest.raises(ValueError):
        SearchBudget(max_domain_n=0)
    with pytest.raises(ValueError):
        SearchBudget(wall_clock=0)


class _ToyClaim:
    """Fails in partition 2 and again in 4; the first failure must win."""

    id = "toy"

    @staticmethod
    def partitions(budget):
        return range(6)

    @staticmethod
    def scan(key, budget, variant, deadline):
        res = PartitionResult(checked=10, stats={"seen": 1})
        if key in (2, 4):
            res.violation = (key, {"where": key})
        return res


def test_driver_stops_at_first_violation():
    v = search_counterexample(_ToyClaim, SearchBudget(), "open")
    assert v.outcome is Outcome.COUNTEREXAMPLE
    assert v.witness == 2 and v.detail == {"where": 2}
    assert v.checked == 30 and v.stats == {"seen": 3}
    assert v.variant == "open"


class _EmptyDiffersFromEmpty:
    """The claim "∅ ≠ ∅": every instance violates it."""

    id = "empty-neq-empty"

    @staticmethod
    def partitions(budget):
        return [sid for sid, _ in universe(budget.max_domain_n, budget)]

    @staticmethod
    def scan(key, budget, variant, deadline):
        return PartitionResult(checked=1, violation=(key, {"lhs": 0, "rhs": 0}))


def test_driver_smoke_first_instance():
    v = search_counterexample(_EmptyDiffersFromEmpty, SearchBudget(), "alpha-open")
    assert v.outcome is Outcome.COUNTEREXAMPLE
    assert v.witness == (1, 0) and v.checked == 1
