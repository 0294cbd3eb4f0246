import numpy as np
import pytest

from spectral_chroma.graph import erdos_renyi, is_connected


def random_connected(n, rng, p=0.5):
    while True:
        g = erdos_renyi(n, p, rng)
        if is_connected(g):
            return g


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240601))


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
