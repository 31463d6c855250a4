import pytest
from hypothesis import settings

from teapot.markov import build_graphs
from teapot.tent import realize_lambda

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def golden():
    return realize_lambda("101")


@pytest.fixture(scope="session")
def tribonacci():
    return realize_lambda("1001")


@pytest.fixture(scope="session")
def golden_graphs(golden):
    return build_graphs(golden)


@pytest.fixture(scope="session")
def golden_G(golden_graphs):
    return golden_graphs[2]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
