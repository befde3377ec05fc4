import pytest

_criteria: list[tuple[int, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, title = mark.args
        status = "PASS" if rep.outcome == "passed" else rep.outcome.upper()
        _criteria.append((number, title, status))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    by_number: dict[int, list] = {}
    for number, title, status in _criteria:
        by_number.setdefault(number, []).append((title, status))
    for number in sorted(by_number):
        entries = by_number[number]
        ok = all(s == "PASS" for _, s in entries)
        title = entries[0][0]
        detail = "" if len(entries) == 1 else f" ({sum(s == 'PASS' for _, s in entries)}/{len(entries)} checks)"
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title}{detail}")
