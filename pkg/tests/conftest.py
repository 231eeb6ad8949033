import re

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.failed:
        _CRITERIA[key] = ("FAIL", report.duration)
    elif report.when == "call":
        prev = _CRITERIA.get(key)
        _CRITERIA[key] = prev if prev and prev[0] == "FAIL" else ("PASS", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), (status, secs) in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {num:2d} {name:<24} {status}  ({secs:.2f}s)")
