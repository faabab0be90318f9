import logging
import math
from enum import Enum
from typing import Optional

import networkx as nx
import numpy as np

from spectral_sketch.core.exceptions import InvalidParameterError
from spectral_sketch.core.seeding import SeedLike, child_int, child_rng, root_entropy
from spectral_sketch.models.graph import WeightedGraph

logger = logging.getLogger(__name__)

DENSE_CORE_SIZE = 60


class GraphKind(str, Enum):
    RANDOM_REGULAR = "random-regular"
    BARBELL = "barbell"
    POWER_LAW = "power-law"
    COMPLETE = "complete"
    DENSE_CORE = "dense-core"
    PATH = "path"


class WeightMode(str, Enum):
    CONSTANT = "constant"
    LOG_UNIFORM = "log-uniform"


def from_networkx(graph: nx.Graph, n: int, weights: np.ndarray) -> WeightedGraph:
    edges = np.asarray(list(graph.edges()), dtype=np.int64).reshape(-1, 2)
    return WeightedGraph(n, edges[:, 0], edges[:, 1], weights[: edges.shape[0]])


def dense_core_graph(n: int, core: Optional[int] = None) -> nx.Graph:
    """Split graph: a clique on the first ``core`` vertices, every other vertex joined to all of them.

    The core defaults to ``min(DENSE_CORE_SIZE, n // 5)`` vertices. The periphery is an
    independent set, so periphery degrees equal the core size while core degrees grow with ``n``.
    """
    core = min(DENSE_CORE_SIZE, n // 5) if core is None else core
    if core < 2 or core >= n:
        raise InvalidParameterError(f"Core size must lie in [2, {n}), got {core}")
    graph = nx.complete_graph(core)
    graph.add_edges_from((c, p) for p in range(core, n) for c in range(core))
    return graph


def _edge_weights(mode: WeightMode, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    if mode == WeightMode.CONSTANT:
        return np.ones(count)
    return np.exp(rng.uniform(0.0, 3.0 * math.log(max(n, 2)), size=count))


def generate(kind, n: int, seed: SeedLike = None, weights="constant", degree: int = 6) -> WeightedGraph:
    """Synthetic test graph of the given kind on ``n`` vertices."""
    try:
        kind = GraphKind(str(getattr(kind, "value", kind)).lower())
        mode = WeightMode(str(getattr(weights, "value", weights)).lower())
    except ValueError as e:
        raise InvalidParameterError(str(e))
    if n < 2:
        raise InvalidParameterError(f"Graphs need at least 2 vertices, got {n}")
    seed = root_entropy(seed)
    nx_seed = child_int(seed, 0) % (2**32)

    if kind == GraphKind.RANDOM_REGULAR:
        if degree >= n or (n * degree) % 2:
            raise InvalidParameterError(f"No {degree}-regular graph on {n} vertices")
        graph = nx.random_regular_graph(degree, n, seed=nx_seed)
    elif kind == GraphKind.BARBELL:
        if n % 2 or n < 6:
            raise InvalidParameterError(f"Barbell needs an even n >= 6, got {n}")
        graph = nx.barbell_graph(n // 2, 0)
    elif kind == GraphKind.POWER_LAW:
        if n <= 3:
            raise InvalidParameterError(f"Power-law graphs need n > 3, got {n}")
        graph = nx.barabasi_albert_graph(n, 3, seed=nx_seed)
    elif kind == GraphKind.COMPLETE:
        graph = nx.complete_graph(n)
    elif kind == GraphKind.DENSE_CORE:
        if n < 10:
            raise InvalidParameterError(f"Dense-core graphs need n >= 10, got {n}")
        graph = dense_core_graph(n)
    else:
        graph = nx.path_graph(n)

    w = _edge_weights(mode, n, graph.number_of_edges(), child_rng(seed, 2))
    g = from_networkx(graph, n, w)
    logger.debug(f"Generated {kind.value} graph: n={n}, m={g.m}, weights={mode.value}")
    return g
