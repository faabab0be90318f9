import logging
from typing import Callable, List

import numpy as np
import pytest

from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.oriented import OrientedGraph
from spectral_sketch.models.partition import Stratum, StratumKind
from spectral_sketch.operations.generators import generate

# ======================================================================================
# Logging Configuration
# ======================================================================================
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# ======================================================================================
# Helper Functions
# ======================================================================================
def complete_graph(m: int, weight: float = 1.0) -> WeightedGraph:
    """Complete graph K_m with a constant weight."""
    edges = [(i, j, weight) for i in range(m) for j in range(i + 1, m)]
    return WeightedGraph.from_edges(m, edges)


def two_triangles() -> WeightedGraph:
    """Two unit triangles {0,1,2} and {3,4,5} joined by the bridge (2, 3)."""
    return WeightedGraph.from_edges(6, [
        (0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0),
        (3, 4, 1.0), (3, 5, 1.0), (4, 5, 1.0),
        (2, 3, 1.0),
    ])


def path_graph(m: int) -> WeightedGraph:
    return WeightedGraph.from_edges(m, [(i, i + 1, 1.0) for i in range(m - 1)])


def star_graph(leaves: int) -> WeightedGraph:
    """Star K_{1,leaves} with the centre at vertex 0."""
    return WeightedGraph.from_edges(leaves + 1, [(0, i, 1.0) for i in range(1, leaves + 1)])


def random_graph(n: int, p: float, rng: np.random.Generator, low: float = 1.0, high: float = 1.0) -> WeightedGraph:
    """Erdos-Renyi graph with weights uniform in [low, high]."""
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    w = rng.uniform(low, high, size=int(keep.sum())) if high > low else np.full(int(keep.sum()), low)
    return WeightedGraph(n, iu[keep], ju[keep], w)


def oriented_k6() -> OrientedGraph:
    """K_6 with i -> j when (j - i) mod 6 is 1 or 2, plus i -> i + 3 for i < 3.

    Out-degrees are 3 for vertices 0..2 and 2 for 3..5.
    """
    tails, heads = [], []
    for i in range(6):
        for step in (1, 2):
            tails.append(i)
            heads.append((i + step) % 6)
    for i in range(3):
        tails.append(i)
        heads.append(i + 3)
    return OrientedGraph(6, tails, heads, np.ones(len(tails)))


def k6_stratum(s: float = 10.0) -> Stratum:
    """Degree stratum kappa=0 for beta=2: tail out-degrees lie in [2, 4)."""
    return Stratum(StratumKind.DEGREE, oriented_k6(), level=0, weight_class=1, gamma=1.0, kappa=0, s=s)


def monte_carlo(builder: Callable[[int], float], trials: int) -> np.ndarray:
    return np.asarray([builder(seed) for seed in range(trials)], dtype=np.float64)

# ======================================================================================
# Graph Fixtures
# ======================================================================================
@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def triangles_bridge() -> WeightedGraph:
    return two_triangles()


@pytest.fixture
def k6() -> WeightedGraph:
    return complete_graph(6)


@pytest.fixture
def single_edge() -> WeightedGraph:
    return WeightedGraph.from_edges(2, [(0, 1, 5.0)])


@pytest.fixture
def random_graphs(request) -> List[WeightedGraph]:
    """Connected-ish random graphs; count defaults to 10 unless parametrized."""
    count = getattr(request, "param", 10)
    rng = np.random.default_rng(2024)
    graphs = [random_graph(int(rng.integers(8, 30)), 0.4, rng) for _ in range(count)]
    logger.info(f"Generated {len(graphs)} random graphs.")
    return graphs


@pytest.fixture(scope="session")
def dense_core_500() -> WeightedGraph:
    return generate("dense-core", 500, seed=7)

# ======================================================================================
# Pytest Command-Line Options
# ======================================================================================
def pytest_addoption(parser):
    """
    Add custom command line options:
      --run-slow    : Run tests marked as 'slow'
    """
    parser.addoption("--run-slow", action="store_true", help="Run tests marked as slow")


def pytest_collection_modifyitems(config, items):
    """
    Skip tests marked as 'slow' unless --run-slow is specified.
    """
    if not config.getoption("--run-slow"):
        skip_slow = pytest.mark.skip(reason="use --run-slow to run")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)
