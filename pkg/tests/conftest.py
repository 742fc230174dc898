import pytest

from wrtseifert.seifert import make_manifold


@pytest.fixture(scope="session")
def m235():
    return make_manifold((2, 3, 5))


@pytest.fixture(scope="session")
def m237():
    return make_manifold((2, 3, 7))


@pytest.fixture(scope="session")
def m2357():
    return make_manifold((2, 3, 5, 7))


@pytest.fixture(scope="session")
def m235711():
    return make_manifold((2, 3, 5, 7, 11))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")
    config._criteria = {}


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow tier, use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    status = item.config._criteria.setdefault(n, [title, "PASS"])
    if rep.when == "call" and rep.failed or rep.when == "setup" and rep.failed:
        status[1] = "FAIL"
    elif rep.skipped and status[1] == "PASS":
        status[1] = "SKIP"


def pytest_terminal_summary(terminalreporter, config):
    crit = getattr(config, "_criteria", {})
    if not crit:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(crit):
        title, status = crit[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}: {title}")
