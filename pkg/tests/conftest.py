import pytest


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False, help="run the extended q = 9, 11, 13 scans")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="needs --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


_CRITERIA: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one summary line per acceptance criterion: ``criterion(num, ok, detail)``."""

    def record(num, ok, detail):
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
        _CRITERIA.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
