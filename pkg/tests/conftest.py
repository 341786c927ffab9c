import pytest

from agext.curves import elliptic_curve, hermitian_curve
from agext.gf import make_field


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False,
                     help="run the heavy covering-radius cases")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="slow tier; pass --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def gf9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def gf19():
    return make_field(19)


@pytest.fixture(scope="session")
def e9(gf9):
    return elliptic_curve(gf9, 1, 0)


@pytest.fixture(scope="session")
def e19(gf19):
    return elliptic_curve(gf19, gf19.neg(1), 4)


@pytest.fixture(scope="session")
def herm3():
    return hermitian_curve(3)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
