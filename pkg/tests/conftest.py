
import pytest

from tropmod.lattice import LatticePolygon

T4 = [(0, 0), (4, 0), (0, 4)]
SQUARE3 = [(0, 0), (3, 0), (3, 3), (0, 3)]
CHOPPED = [(0, 0), (3, 0), (0, 3), (3, 2), (2, 3)]

# small nonhyperelliptic polygons, pairwise inequivalent, at most 12 lattice points
SMALL_CORPUS = [
    [(0, 2), (3, 0), (3, 2), (2, 3)],
    [(0, 3), (1, 1), (4, 0), (3, 2)],
    [(0, 1), (4, 2), (4, 4), (1, 3)],
    [(0, 0), (3, 0), (2, 4), (0, 1)],
    [(0, 2), (1, 1), (4, 4), (1, 4)],
    [(0, 3), (1, 1), (3, 2), (3, 4), (1, 4)],
    [(0, 4), (1, 2), (4, 0), (4, 3)],
]


@pytest.fixture
def t4():
    return LatticePolygon(T4)


@pytest.fixture
def square3():
    return LatticePolygon(SQUARE3)


@pytest.fixture
def chopped():
    return LatticePolygon(CHOPPED)


_criteria: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or rep.failed:
        prev = _criteria.get(number)
        ok = rep.passed and (prev is None or prev[1])
        _criteria[number] = (title, ok, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok, secs = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f}s)")
