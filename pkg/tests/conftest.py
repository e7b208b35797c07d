import random

import pytest

from cnozk.instances import K3, dlog_keygen, random_colorable_graph


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def k3():
    return K3, (0, 1, 2)


@pytest.fixture
def graph12():
    return random_colorable_graph(12, random.Random(7))


@pytest.fixture
def dlog():
    return dlog_keygen(random.Random(99))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS.values():
        terminalreporter.write_line(line)
