import logging
import math
from typing import List, Tuple

import numpy as np

from spectral_sketch.core.config import get_settings
from spectral_sketch.core.exceptions import PartitionInvariantError, PropertyViolationError
from spectral_sketch.core.seeding import SeedLike, child_int, child_rng, root_entropy
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.oriented import OrientedGraph
from spectral_sketch.models.partition import Stratum, StratumKind
from spectral_sketch.models.sketch import ImprovedSketch, S2ComponentSketch, S2StratumSketch
from spectral_sketch.operations.alias import AliasTable
from spectral_sketch.operations.graph_ops import as_query_vector, quadratic_form
from spectral_sketch.operations.partition import check_stratum_properties, partition
from spectral_sketch.operations.preprocess import preprocess
from spectral_sketch.operations.s1 import aggregate_draws
from spectral_sketch.schemas.params import SketchParams
from spectral_sketch.schemas.report import S2BuildStats

logger = logging.getLogger(__name__)

_PARTITION_STREAM = 0
_STRATUM_STREAM = 1


def light_tail_threshold(kappa: int, beta: int) -> float:
    """Out-degree ``2^(kappa-1) beta`` below which a tail's arcs are stored."""
    return 2.0 ** (kappa - 1) * beta


def removed_edge_limit(beta: int, vertices: int, arcs: int) -> float:
    """Cut edges a degree stratum may lose to preprocessing: ``2 C beta |V| log2 |E|``.

    Tails have out-degree below ``2^(kappa+1) beta``, so ``h |E| < 2 beta |V|`` at ``h = 2^-kappa``.
    """
    return 2.0 * get_settings().CUT_EDGE_CONSTANT * beta * vertices * math.log2(max(arcs, 2))


def check_s2_stats(stats: S2BuildStats, beta: int, arcs: int) -> None:
    """Bound removed cut edges and the tails that lost more than half their out-arcs."""
    limit = removed_edge_limit(beta, stats.vertices, arcs)
    if stats.removed_edges > limit:
        raise PartitionInvariantError(
            f"S2 stratum kappa={stats.kappa}: {stats.removed_edges} cut edges exceed {limit:.0f}"
        )
    # a halved tail started at 2^kappa beta or more and lost at least half of it to the cut
    per_tail = light_tail_threshold(stats.kappa, beta)
    if stats.halved_vertices * per_tail > stats.removed_edges:
        raise PartitionInvariantError(
            f"S2 stratum kappa={stats.kappa}: {stats.halved_vertices} halved tails need at least "
            f"{stats.halved_vertices * per_tail:.0f} cut edges, only {stats.removed_edges} removed"
        )


def _component_arcs(arcs: OrientedGraph, component: WeightedGraph) -> OrientedGraph:
    return arcs.subset(np.isin(arcs.edge_keys(), component.edge_keys()))


def _sketch_component(arcs: OrientedGraph, component: WeightedGraph, kappa: int, beta: int,
                      gamma: float, rng: np.random.Generator) -> S2ComponentSketch:
    vertices = component.vertices()
    delta = component.weighted_degrees()[vertices]
    d_out = arcs.out_degrees()
    is_light = d_out[arcs.tails] < light_tail_threshold(kappa, beta)
    s_arcs = arcs.subset(is_light)
    heavy = arcs.subset(~is_light)
    heavy_in_all = heavy.weighted_in_degrees()

    # heavy arcs grouped by head
    order = np.argsort(heavy.heads, kind="stable")
    heads = heavy.heads[order]
    tails = heavy.tails[order]
    wts = heavy.weights[order]
    starts = np.searchsorted(heads, vertices, side="left")
    ends = np.searchsorted(heads, vertices, side="right")

    draw_head, draw_tail = [], []
    for idx, u in enumerate(vertices):
        lo, hi = starts[idx], ends[idx]
        if hi == lo:
            continue
        picks = AliasTable(wts[lo:hi]).sample(beta, rng)
        draw_head.append(np.full(beta, u, dtype=np.int64))
        draw_tail.append(tails[lo:hi][picks])
    if draw_head:
        s_head, s_tail, s_cnt = aggregate_draws(np.concatenate(draw_head), np.concatenate(draw_tail), arcs.n)
    else:
        s_head, s_tail, s_cnt = aggregate_draws(np.empty(0), np.empty(0), arcs.n)

    return S2ComponentSketch(
        kappa=int(kappa),
        beta=int(beta),
        gamma=float(gamma),
        vertices=vertices,
        delta=delta,
        heavy_in=heavy_in_all[vertices],
        s_arcs=s_arcs,
        sample_head=s_head,
        sample_tail=s_tail,
        sample_count=s_cnt,
    )


def build_s2(stratum: Stratum, params: SketchParams, seed: SeedLike = None) -> Tuple[WeightedGraph, List[S2ComponentSketch], S2BuildStats]:
    """Preprocess a degree stratum at ``h = 2^-kappa`` and sketch each certified component.

    Arcs keep the orientation assigned during partitioning.
    """
    if stratum.kind != StratumKind.DEGREE or stratum.kappa is None:
        raise PropertyViolationError(f"Only degree strata are sampled, got {stratum.kind.value}")
    beta = params.beta
    check_stratum_properties(stratum, beta)
    kappa = stratum.kappa
    rng = child_rng(seed)

    undirected = stratum.graph()
    result = preprocess(undirected, 2.0 ** (-kappa))
    components = []
    kept_out = np.zeros(stratum.arcs.n, dtype=np.int64)
    for comp in result.components:
        arcs = _component_arcs(stratum.arcs, comp)
        kept_out += arcs.out_degrees()
        components.append(_sketch_component(arcs, comp, kappa, beta, stratum.gamma, rng))

    original_out = stratum.arcs.out_degrees()
    tails = np.unique(stratum.arcs.tails)
    halved = int(np.sum(kept_out[tails] < original_out[tails] / 2.0))
    stats = S2BuildStats(
        kappa=kappa,
        vertices=int(stratum.arcs.vertices().size),
        removed_edges=result.q_edges.m,
        halved_vertices=halved,
        components=len(components),
        sampling_vertices=sum(int(np.count_nonzero(c.heavy_in)) for c in components),
    )
    check_s2_stats(stats, beta, stratum.arcs.m)
    logger.debug(
        f"S2 stratum kappa={kappa}: {stats.components} components, {stats.removed_edges} cut edges, "
        f"{stats.halved_vertices} halved tails, {stats.sampling_vertices} sampling vertices"
    )
    return result.q_edges, components, stats


def estimate_s2(c: S2ComponentSketch, x: np.ndarray) -> float:
    """Unbiased estimate of ``x^T L(P) x`` from an S2 component sketch."""
    x = np.asarray(x, dtype=np.float64)
    xv = x[c.vertices]
    total = float(np.dot(c.delta, xv * xv))
    s = c.s_arcs
    total -= 2.0 * float(np.dot(s.weights, x[s.tails] * x[s.heads]))
    if c.sample_head.size:
        pos = np.searchsorted(c.vertices, c.sample_head)
        coeff = c.heavy_in[pos] / c.beta
        total -= 2.0 * float(np.dot(coeff * c.sample_count, x[c.sample_head] * x[c.sample_tail]))
    return total


def build_improved(g: WeightedGraph, params: SketchParams, seed: SeedLike = None) -> ImprovedSketch:
    """Partition into strata, store low and whole strata, S2-sketch degree strata."""
    seed = root_entropy(seed)
    parts = partition(g, params, seed=child_int(seed, _PARTITION_STREAM))
    stored: List[WeightedGraph] = []
    s2_strata: List[S2StratumSketch] = []
    for idx, stratum in enumerate(parts.strata):
        if stratum.stored_whole:
            stored.append(stratum.graph())
            continue
        q, components, stats = build_s2(stratum, params, seed=child_int(seed, _STRATUM_STREAM, idx))
        s2_strata.append(S2StratumSketch(kappa=stratum.kappa, weight_class=stratum.weight_class,
                                         gamma=stratum.gamma, q=q, components=components, stats=stats))
    logger.info(
        f"Built improved sketch: n={g.n}, beta={params.beta}, {len(stored)} stored strata, "
        f"{len(s2_strata)} sampled strata over {parts.recursion_depth} levels"
    )
    return ImprovedSketch(g.n, params, seed, stored, s2_strata, partition=parts)


def estimate_improved(sk: ImprovedSketch, x) -> float:
    x = as_query_vector(x, sk.n)
    total = sum(quadratic_form(h, x) for h in sk.stored)
    for stratum in sk.s2_strata:
        total += quadratic_form(stratum.q, x)
        for component in stratum.components:
            total += component.estimate(x)
    return float(total)
