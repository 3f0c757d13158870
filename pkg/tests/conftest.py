import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from committee_lab.generators import PopulationSpec, uniform_election  # noqa: E402
from committee_lab.spatial import derive_profile  # noqa: E402

ACCEPTANCE_LINES = []


def random_instance(seed, m, n, side=6.0):
    rng = np.random.default_rng(seed)
    election = uniform_election(m, n, PopulationSpec.rectangle(side, side), rng)
    return election, derive_profile(election)


@pytest.fixture
def make_instance():
    return random_instance


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
