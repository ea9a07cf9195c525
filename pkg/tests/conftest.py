import pytest

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n = marker.args[0]
    ok = call.excinfo is None
    prev = _CRITERIA.get(n, (True, []))
    _CRITERIA[n] = (prev[0] and ok, prev[1] + [(item.name, ok)])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, parts = _CRITERIA[n]
        failed = [name for name, good in parts if not good]
        detail = f" (failing: {', '.join(failed)})" if failed else ""
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}{detail}")
