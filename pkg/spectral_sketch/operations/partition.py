import logging
import math
from typing import List

import numpy as np

from spectral_sketch.core.config import get_settings
from spectral_sketch.core.exceptions import PartitionInvariantError, PropertyViolationError
from spectral_sketch.core.seeding import SeedLike, child_int, root_entropy
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.oriented import OrientedGraph
from spectral_sketch.models.partition import ImprovedPartition, Stratum, StratumKind
from spectral_sketch.operations.graph_ops import class_base, dyadic_class
from spectral_sketch.operations.orient import DirectionAssigner, random_orientation
from spectral_sketch.operations.sparsify import check_weight_ratio, sparsify
from spectral_sketch.schemas.params import SketchParams
from spectral_sketch.schemas.report import LevelDiagnostics

logger = logging.getLogger(__name__)


def degree_class_count(beta: int, s: float) -> int:
    """Number of bands ``[2^i beta, 2^(i+1) beta)`` with ``2^i beta < 2 s``."""
    count = 0
    while (2 ** count) * beta < 2.0 * s:
        count += 1
    return count


def level_cap(n: int, eps: float) -> int:
    return int(math.ceil(math.log(max(n, 2)) / math.log(2.0 - eps * eps))) + 2


def stratum_cap(n: int) -> float:
    return get_settings().STRATUM_COUNT_CONSTANT * math.log2(max(n, 2)) ** 3


def _stratify(og: OrientedGraph, beta: int, s: float, level: int, w_min: float):
    """Split arcs by weight class and class-local tail out-degree.

    Returns the strata of this level and the mask of arcs left for the next level.
    """
    bands = degree_class_count(beta, s)
    peel_below = (2 ** bands) * beta if bands else beta
    classes = dyadic_class(og.weights, w_min)
    remaining = np.zeros(og.m, dtype=bool)
    strata: List[Stratum] = []
    for j in np.unique(classes):
        in_class = classes == j
        local_out = np.bincount(og.tails[in_class], minlength=og.n)
        tail_deg = np.zeros(og.m, dtype=np.int64)
        tail_deg[in_class] = local_out[og.tails[in_class]]
        gamma = class_base(int(j), w_min)

        low = in_class & (tail_deg < beta)
        if low.any():
            strata.append(Stratum(StratumKind.LOW, og.subset(low), level, int(j), gamma, None, s))
        for i in range(bands):
            band = in_class & (tail_deg >= (2 ** i) * beta) & (tail_deg < (2 ** (i + 1)) * beta)
            if band.any():
                strata.append(Stratum(StratumKind.DEGREE, og.subset(band), level, int(j), gamma, i, s))
        remaining |= in_class & (tail_deg >= peel_below)
    return strata, remaining


def partition(g: WeightedGraph, params: SketchParams, seed: SeedLike = None) -> ImprovedPartition:
    """Peel strata level by level until the remainder is empty.

    Each level sparsifies the current graph, measures ``eta``, orients it with
    threshold ``2 s`` and peels every arc whose tail has class-local
    out-degree below ``2 s``. The remainder keeps only vertices of out-degree
    at least ``2 s - 1``, so its support shrinks by ``2 - 1/s`` per level.
    """
    seed = root_entropy(seed)
    check_weight_ratio(g)
    eps = params.working_eps
    beta = params.beta
    cap = level_cap(g.n, eps)

    strata: List[Stratum] = []
    levels: List[LevelDiagnostics] = []
    current = g
    level = 0
    while current.m > 0:
        support = current.vertices().size
        if support < 3:
            strata.append(Stratum(StratumKind.WHOLE, OrientedGraph.from_graph(current), level))
            break
        if level >= cap:
            raise PartitionInvariantError(f"Partition did not finish within {cap} levels")

        sparse = sparsify(current, eps, seed=child_int(seed, level, 0),
                          backend=params.sparsifier, verify=params.verify_sparsifier)
        graph = sparse.graph
        n_level = graph.vertices().size
        raw_eta = graph.m * eps * eps / n_level
        if raw_eta < 1.0:
            logger.debug(f"Level {level}: clamping eta={raw_eta:.3f} to 1")
        eta = max(1.0, raw_eta)
        eps_tilde = eps / math.sqrt(eta)
        s = 1.0 / (eps_tilde * eps_tilde)

        assigner = DirectionAssigner(random_orientation(graph, child_int(seed, level, 1)), 2.0 * s)
        og = assigner.run()
        level_strata, remaining = _stratify(og, beta, s, level, graph.w_min)
        remainder = og.subset(remaining).to_undirected()
        remainder_support = remainder.vertices().size
        if remainder_support > n_level / (2.0 - 1.0 / s) + 1e-9:
            raise PartitionInvariantError(
                f"Level {level}: remainder has {remainder_support} vertices, above "
                f"{n_level}/(2 - 1/s) = {n_level / (2.0 - 1.0 / s):.1f}"
            )
        strata.extend(level_strata)
        levels.append(LevelDiagnostics(
            level=level, vertices=n_level, edges=graph.m, eta=eta, eps_tilde=eps_tilde, s=s,
            flips=assigner.flips, strata=len(level_strata), peeled_arcs=int(og.m - remaining.sum()),
            remainder_vertices=remainder_support,
        ))
        logger.debug(
            f"Level {level}: {n_level} vertices, {graph.m} edges, s={s:.3g}, "
            f"{len(level_strata)} strata, remainder {remainder.m} edges on {remainder_support} vertices"
        )
        current = remainder
        level += 1

    if len(strata) > stratum_cap(g.n):
        raise PartitionInvariantError(f"{len(strata)} strata exceed {stratum_cap(g.n):.0f}")
    logger.info(f"Partition produced {len(strata)} strata over {len(levels)} levels")
    return ImprovedPartition(strata=strata, levels=levels)


def check_stratum_properties(stratum: Stratum, beta: int) -> None:
    """Weights within a factor of two, and tails in the stratum's out-degree band."""
    if stratum.kind == StratumKind.WHOLE:
        return
    arcs = stratum.arcs
    if arcs.m == 0:
        return
    w = arcs.weights
    if w.max() >= 2.0 * stratum.gamma or w.min() < stratum.gamma * (1.0 - 1e-12):
        raise PropertyViolationError(f"Stratum weights leave [{stratum.gamma:.6g}, {2 * stratum.gamma:.6g})")
    tail_deg = arcs.out_degrees()[np.unique(arcs.tails)]
    if stratum.kind == StratumKind.LOW:
        if tail_deg.max() >= beta:
            raise PropertyViolationError(f"Low stratum has a tail with out-degree {tail_deg.max()} >= {beta}")
        return
    lo = (2 ** stratum.kappa) * beta
    if tail_deg.min() < lo or tail_deg.max() >= 2 * lo:
        raise PropertyViolationError(
            f"Degree stratum kappa={stratum.kappa} has tail out-degrees in "
            f"[{tail_deg.min()}, {tail_deg.max()}], outside [{lo}, {2 * lo})"
        )
    if stratum.s is not None and lo >= 2.0 * stratum.s:
        raise PropertyViolationError(f"Degree band {lo} is not below 2s = {2.0 * stratum.s:.4g}")
