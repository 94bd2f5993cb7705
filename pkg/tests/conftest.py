import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spinrevival.models import krawtchouk, shifted_krawtchouk, uniform  # noqa: E402

PI = math.pi
THETA_GRID = [k * PI / 37 for k in range(37)]


def fixture_chains(max_n=6):
    """Mirror-symmetric chains used across test modules."""
    chains = []
    for n in range(1, max_n + 1):
        chains += [krawtchouk(n), shifted_krawtchouk(n), uniform(n)]
    return chains


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20151107)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    RESULTS = getattr(module, "RESULTS", None)
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
