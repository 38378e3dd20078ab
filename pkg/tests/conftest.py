import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion(request):
    """Call with ``(number, description)``; the outcome is printed at session end."""
    entry = {}

    def record(number, description):
        entry.update(number=number, description=description)

    yield record
    if entry:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        ACCEPTANCE_LINES.append(
            f"criterion {entry['number']:>2}: {'PASS' if ok else 'FAIL'}  {entry['description']}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
