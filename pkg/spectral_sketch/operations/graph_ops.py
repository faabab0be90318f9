import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.sparse.csgraph import connected_components as _cc

from spectral_sketch.core.config import get_settings
from spectral_sketch.core.exceptions import (
    DimensionMismatchError,
    DisconnectedGraphError,
    GraphTooLargeError,
    GraphValidationError,
    InvalidParameterError,
)
from spectral_sketch.models.graph import Cut, DegreeTable, WeightedGraph

logger = logging.getLogger(__name__)

_ENUM_CHUNK = 1 << 15


def as_query_vector(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size != n:
        raise DimensionMismatchError(f"Query vector has shape {x.shape}, expected ({n},)")
    if not np.all(np.isfinite(x)):
        raise InvalidParameterError("Query vector entries must be finite")
    return x


def quadratic_form(g: WeightedGraph, x) -> float:
    """Exact ``x^T L(g) x = sum_e w_e (x_u - x_v)^2``."""
    x = as_query_vector(x, g.n)
    diff = x[g.u] - x[g.v]
    return float(np.dot(g.w, diff * diff))


def degrees(g: WeightedGraph) -> DegreeTable:
    return g.degrees()


def dyadic_class(weights: np.ndarray, w_min: float) -> np.ndarray:
    """Index ``i >= 1`` with ``w in [2^(i-1) w_min, 2^i w_min)`` per weight."""
    weights = np.asarray(weights, dtype=np.float64)
    ratio = weights / w_min
    idx = np.floor(np.log2(ratio)).astype(np.int64) + 1
    # log2 round-off at exact powers of two
    idx = np.where(ratio >= np.ldexp(1.0, idx.astype(np.int32)), idx + 1, idx)
    idx = np.where(ratio < np.ldexp(1.0, (idx - 1).astype(np.int32)), idx - 1, idx)
    return np.maximum(idx, 1)


def class_base(index: int, w_min: float) -> float:
    return float(np.ldexp(w_min, int(index) - 1))


def weight_class_partition(g: WeightedGraph) -> List[Tuple[int, WeightedGraph]]:
    """Split edges into classes ``[2^(i-1) w_min, 2^i w_min)``; empty classes are skipped."""
    if g.m == 0:
        return []
    idx = dyadic_class(g.w, g.w_min)
    classes = [(int(i), g.edge_subgraph(idx == i)) for i in np.unique(idx)]
    logger.debug(f"Split {g.m} edges into {len(classes)} weight classes")
    return classes


def connected_components(g: WeightedGraph) -> List[np.ndarray]:
    """Vertex sets of the connected components of the support, largest first."""
    support = g.vertices()
    if support.size == 0:
        return []
    compact, ids = g.relabel()
    count, labels = _cc(compact.adjacency(), directed=False)
    comps = [ids[labels == c] for c in range(count)]
    comps.sort(key=lambda c: (-c.size, int(c[0])))
    return comps


def is_connected(g: WeightedGraph) -> bool:
    return len(connected_components(g)) == 1


def component_subgraphs(g: WeightedGraph) -> List[WeightedGraph]:
    return [g.induced(c) for c in connected_components(g)]


def conductance(g: WeightedGraph, side) -> Cut:
    return Cut.from_side(g, np.asarray(side, dtype=np.int64))


def exact_cheeger(g: WeightedGraph, limit: Optional[int] = None) -> Tuple[float, Cut]:
    """Minimum conductance over every proper subset of the support, by enumeration."""
    limit = get_settings().CHEEGER_ENUM_LIMIT if limit is None else limit
    compact, ids = g.relabel()
    k = compact.n
    if k < 2:
        raise GraphValidationError("Cheeger's constant needs at least one edge")
    if k > limit:
        raise GraphTooLargeError(f"Exhaustive enumeration is limited to {limit} vertices, got {k}")
    if not is_connected(compact):
        raise DisconnectedGraphError("Cheeger's constant is undefined for a disconnected graph")

    deg = compact.weighted_degrees()
    total = float(deg.sum())
    shifts = np.arange(k - 1, dtype=np.int64)
    best_phi = np.inf
    best_mask = 0
    n_masks = 1 << (k - 1)
    # the last vertex is always outside S, so every cut is visited once
    for start in range(1, n_masks, _ENUM_CHUNK):
        masks = np.arange(start, min(start + _ENUM_CHUNK, n_masks), dtype=np.int64)
        bits = np.zeros((masks.size, k), dtype=bool)
        bits[:, : k - 1] = (masks[:, None] >> shifts) & 1
        vol = bits @ deg
        cut = (bits[:, compact.u] != bits[:, compact.v]) @ compact.w
        phi = cut / np.minimum(vol, total - vol)
        pos = int(np.argmin(phi))
        if phi[pos] < best_phi:
            best_phi = float(phi[pos])
            best_mask = int(masks[pos])
    side_local = np.flatnonzero((best_mask >> np.arange(k)) & 1)
    return best_phi, Cut.from_side(g, ids[side_local])
