import numpy as np
import pytest
from hypothesis import settings

from birational_lab import a3

settings.register_profile("repro", derandomize=True, deadline=None, max_examples=200)
settings.load_profile("repro")


@pytest.fixture
def rng():
    return np.random.default_rng(20240)


@pytest.fixture(scope="session")
def arcs():
    """All six local arcs at a = 3, traced once per session with the default 60 steps."""
    return {(w, d): a3.trace_arc(w, d) for d in ("unstable", "stable") for w in range(3)}


@pytest.fixture(scope="session")
def global_arcs(arcs):
    return {k: a3.extend_arc(arc) for k, arc in arcs.items()}


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
