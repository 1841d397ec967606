import pytest

from fintopo.enumeration import catalog
from fintopo.space import PointMap, validate_topology

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def ex_x():
    return validate_topology(3, [0b000, 0b001, 0b111], names="abc")


@pytest.fixture
def ex_y():
    return validate_topology(2, [0b00, 0b01, 0b11], names="pq")


@pytest.fixture
def ex_f(ex_x, ex_y):
    # a -> q, b -> p, c -> q
    return PointMap(ex_x, ex_y, (1, 0, 1))


def small_spaces(max_n=4):
    return [s for n in range(1, max_n + 1) for s in catalog(n)]


@pytest.fixture(scope="session")
def spaces_upto_4():
    return small_spaces(4)


@pytest.fixture(scope="session")
def spaces_upto_3():
    return small_spaces(3)


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion's outcome for the end-of-run summary."""
    name = request.node.get_closest_marker("criterion").args[0]
    box = {"note": ""}
    yield box
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE_RESULTS[name] = (ok, box["note"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0])):
        ok, note = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}" + (f"  ({note})" if note else ""))
