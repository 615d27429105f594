import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from stabsplit import Partition, StabilizerGroup
from stabsplit.clifford import random_stabilizer_state

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


def random_partition(n: int, rng: np.random.Generator, k: int | None = None) -> Partition:
    """Random partition with exactly ``k`` nonempty blocks (``k`` uniform in 1..n if omitted)."""
    k = int(rng.integers(1, n + 1)) if k is None else k
    labels = np.concatenate([np.arange(k), rng.integers(0, k, n - k)])
    rng.shuffle(labels)
    blocks = [tuple(int(q) for q in np.flatnonzero(labels == j)) for j in range(k)]
    return Partition(n, tuple(blocks))


def random_bipartition(n: int, rng: np.random.Generator) -> Partition:
    return random_partition(n, rng, k=2)


def state_from_seed(n: int, seed: int) -> StabilizerGroup:
    return random_stabilizer_state(n, np.random.default_rng(seed))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def epr():
    return StabilizerGroup.from_labels(["XX", "ZZ"])


@pytest.fixture
def ghz3():
    return StabilizerGroup.from_labels(["XXX", "ZZI", "IZZ"])


@pytest.fixture
def cluster4():
    return StabilizerGroup.from_labels(["XZII", "ZXZI", "IZXZ", "IIZX"])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
