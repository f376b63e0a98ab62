import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dualprism.datasets import random_graph  # noqa: E402
from dualprism.graph import toy_graph  # noqa: E402


@pytest.fixture
def toy():
    return toy_graph()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def er_graphs():
    """Erdos-Renyi graphs over n in {8, 32, 128} and p in {0.1, 0.3, 0.6}."""
    out = []
    seed = 0
    while len(out) < 100:
        for n in (8, 32, 128):
            for p in (0.1, 0.3, 0.6):
                if len(out) < 100:
                    out.append(random_graph(n, p, seed))
                    seed += 1
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
