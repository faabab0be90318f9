import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from spectral_sketch.core.config import get_settings
from spectral_sketch.core.exceptions import (
    InvalidParameterError,
    SparsifierError,
    WeightRatioError,
)
from spectral_sketch.core.seeding import SeedLike, child_rng
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.operations.graph_ops import component_subgraphs, quadratic_form
from spectral_sketch.schemas.params import SparsifierBackend

logger = logging.getLogger(__name__)


@dataclass
class SparsifierOutput:
    """Reweighted subgraph with ``|E~| = eta * n / eps^2`` (``n`` = support size)."""

    graph: WeightedGraph
    eta: float
    passthrough: bool
    verified: Optional[bool] = None
    max_relative_error: Optional[float] = None


def size_bound(n_support: int, eps: float) -> float:
    if n_support < 2:
        return 0.0
    return n_support * math.log(n_support) / (eps * eps)


def weight_ratio_limit(n: int) -> float:
    return float(max(n, 2)) ** get_settings().WEIGHT_RATIO_EXPONENT


def check_weight_ratio(g: WeightedGraph) -> float:
    if g.m == 0:
        return 1.0
    ratio = g.w_max / g.w_min
    if ratio > weight_ratio_limit(g.n):
        raise WeightRatioError(
            f"Weight ratio {ratio:.3e} exceeds n^{get_settings().WEIGHT_RATIO_EXPONENT:g} for n={g.n}"
        )
    return ratio


def effective_resistances(g: WeightedGraph) -> np.ndarray:
    """Effective resistance of every edge of a connected graph, by dense pseudo-inverse."""
    compact, _ = g.relabel()
    pinv = np.linalg.pinv(compact.laplacian().toarray(), hermitian=True)
    a, b = compact.u, compact.v
    return np.clip(pinv[a, a] + pinv[b, b] - 2.0 * pinv[a, b], 0.0, None)


def _sample_component(comp: WeightedGraph, eps: float, rng: np.random.Generator) -> WeightedGraph:
    settings = get_settings()
    n_c = comp.vertices().size
    if comp.m <= size_bound(n_c, eps):
        return comp
    if n_c > settings.RESISTANCE_DENSE_LIMIT:
        raise SparsifierError(
            f"Component with {n_c} vertices exceeds the dense resistance limit "
            f"{settings.RESISTANCE_DENSE_LIMIT}; supply a pre-sparsified graph"
        )
    # leverages sum to n_c - 1, so the expected kept count is at most the target
    target = settings.SPARSIFIER_OVERSAMPLING * size_bound(n_c, eps)
    p = np.minimum(1.0, target / (n_c - 1) * comp.w * effective_resistances(comp))
    keep = rng.random(comp.m) < p
    new_w = comp.w[keep] / p[keep]
    logger.debug(f"Kept {int(keep.sum())} of {comp.m} edges on {n_c} vertices (target {target:.0f})")
    return WeightedGraph(comp.n, comp.u[keep], comp.v[keep], new_w, coalesce=False)


def verify_sparsifier(original: WeightedGraph, sparse: WeightedGraph, eps: float,
                      rng: np.random.Generator, trials: Optional[int] = None) -> float:
    """Worst relative quadratic-form error over random Gaussian vectors."""
    trials = get_settings().VERIFY_TRIALS if trials is None else trials
    worst = 0.0
    for _ in range(trials):
        x = rng.standard_normal(original.n)
        exact = quadratic_form(original, x)
        if exact <= 0.0:
            continue
        worst = max(worst, abs(quadratic_form(sparse, x) - exact) / exact)
    return worst


def sparsify(
    g: WeightedGraph,
    eps: float,
    seed: SeedLike = None,
    backend: Union[str, SparsifierBackend] = SparsifierBackend.RESISTANCE,
    verify: bool = False,
) -> SparsifierOutput:
    """Reduce ``g`` to ``O(n log n / eps^2)`` edges preserving every quadratic form.

    Graphs already within the size bound are returned unchanged. Otherwise
    each connected component is sampled by effective resistance and
    reweighted by inverse probability.
    """
    if not (0.0 < eps < 1.0):
        raise InvalidParameterError(f"eps must lie in (0, 1), got {eps}")
    backend = SparsifierBackend(str(getattr(backend, "value", backend)).lower())
    n_support = g.vertices().size

    if g.m <= size_bound(n_support, eps):
        eta = g.m * eps * eps / n_support if n_support else 0.0
        return SparsifierOutput(graph=g, eta=eta, passthrough=True)
    if backend == SparsifierBackend.NONE:
        raise SparsifierError(
            f"Graph has {g.m} edges, above the bound {size_bound(n_support, eps):.0f}; "
            "the 'none' sparsifier needs pre-sparsified input"
        )

    pieces: List[WeightedGraph] = []
    for idx, comp in enumerate(component_subgraphs(g)):
        pieces.append(_sample_component(comp, eps, child_rng(seed, idx)))
    sparse = WeightedGraph.union_all(g.n, pieces)
    check_weight_ratio(sparse)
    eta = sparse.m * eps * eps / n_support
    logger.info(f"Sparsified {g.m} edges to {sparse.m} (eta={eta:.3f})")

    out = SparsifierOutput(graph=sparse, eta=eta, passthrough=False)
    if verify:
        if n_support > get_settings().VERIFY_MAX_VERTICES:
            logger.warning(f"Skipping sparsifier verification on {n_support} vertices")
        else:
            worst = verify_sparsifier(g, sparse, eps, child_rng(seed, 1 << 20))
            out.verified = worst <= eps
            out.max_relative_error = worst
            if not out.verified:
                raise SparsifierError(f"Sparsifier verification failed: relative error {worst:.4f} > {eps}")
    return out
