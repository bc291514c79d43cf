import pytest
from hypothesis import settings, strategies as st

from grundy.graph import Graph, graph_from_edges

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph_from_edges(n, [e for e, k in zip(pairs, keep) if k])


@pytest.fixture
def k3() -> Graph:
    return graph_from_edges(3, [(0, 1), (0, 2), (1, 2)])


# -- acceptance reporting: one line per criterion ----------------------------

_criteria: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    outcome = "passed" if call.excinfo is None else "failed"
    _criteria.setdefault(mark.args[0], []).append((item.name, outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        parts = _criteria[n]
        bad = [name for name, o in parts if o != "passed"]
        status = "FAIL" if bad else "PASS"
        detail = f"  ({', '.join(bad)})" if bad else ""
        tr.write_line(f"criterion {n:2d}: {status}  {len(parts) - len(bad)}/{len(parts)} parts{detail}")
