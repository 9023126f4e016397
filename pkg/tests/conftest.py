import random

import pytest
from hypothesis import HealthCheck, settings

from steinermap import Hypergraph, TargetGraph
from steinermap.instances import random_graph, random_hypergraph, random_target

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def p3():
    """Path 0-1-2 with weights 1 and 2."""
    return TargetGraph(3, [(0, 1, 1), (1, 2, 2)])


@pytest.fixture
def h1():
    return Hypergraph([[0, 1], [1, 2, 3], [0, 2]], 4)


def fuzz_instances(count, seed=0, graph=False, k_range=(2, 7), n_range=(4, 18)):
    """Deterministic (hypergraph, target) pairs for fuzz loops."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(*k_range)
        n = rng.randint(max(n_range[0], k), n_range[1])
        target = random_target(k, rng=rng)
        if graph:
            hg = random_graph(n, rng.randint(n, 3 * n), rng, net_weights=(1, 5))
        else:
            hg = random_hypergraph(n, rng.randint(n // 2 + 1, 2 * n), rng, max_net_size=5,
                                   node_weights=(1, 3), net_weights=(1, 5))
        out.append((hg, target, rng))
    return out


# Acceptance criteria report their verdicts here; printed at the end of the run.
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
