import logging

import numpy as np

from spectral_sketch.core.exceptions import WeightSpreadError
from spectral_sketch.core.seeding import SeedLike, child_rng
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.sketch import S1ComponentSketch
from spectral_sketch.operations.alias import AliasTable
from spectral_sketch.schemas.params import SketchParams

logger = logging.getLogger(__name__)

_SPREAD_RTOL = 1e-12


def check_class_weights(g: WeightedGraph, gamma: float) -> None:
    if g.m == 0:
        return
    if g.w_min < gamma * (1.0 - _SPREAD_RTOL) or g.w_max >= 2.0 * gamma:
        raise WeightSpreadError(
            f"Weights [{g.w_min:.6g}, {g.w_max:.6g}] fall outside [{gamma:.6g}, {2 * gamma:.6g})"
        )


def aggregate_draws(src: np.ndarray, dst: np.ndarray, n: int):
    """Collapse draws into distinct ``(src, dst)`` pairs with multiplicities, sorted."""
    if src.size == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy()
    keys = src.astype(np.int64) * max(n, 1) + dst.astype(np.int64)
    uniq, counts = np.unique(keys, return_counts=True)
    return uniq // max(n, 1), uniq % max(n, 1), counts.astype(np.int64)


def build_s1(p: WeightedGraph, params: SketchParams, gamma: float, seed: SeedLike = None) -> S1ComponentSketch:
    """Store light material of a component exactly and sample ``alpha`` heavy-heavy edges per heavy vertex."""
    check_class_weights(p, gamma)
    alpha = params.alpha
    rng = child_rng(seed)

    vertices = p.vertices()
    deg_all = p.weighted_degrees()
    delta = deg_all[vertices]
    heavy_all = np.zeros(p.n, dtype=bool)
    heavy_all[vertices] = delta > gamma * alpha

    heavy_u = heavy_all[p.u]
    heavy_v = heavy_all[p.v]
    light_edges = p.edge_subgraph(~(heavy_u & heavy_v))
    hh = p.edge_subgraph(heavy_u & heavy_v)
    marginal_all = hh.weighted_degrees()

    # both orientations of every heavy-heavy edge, grouped by source
    src = np.concatenate([hh.u, hh.v])
    dst = np.concatenate([hh.v, hh.u])
    wts = np.concatenate([hh.w, hh.w])
    order = np.argsort(src, kind="stable")
    src, dst, wts = src[order], dst[order], wts[order]
    starts = np.searchsorted(src, vertices, side="left")
    ends = np.searchsorted(src, vertices, side="right")

    draw_src, draw_dst = [], []
    for idx, u in enumerate(vertices):
        lo, hi = starts[idx], ends[idx]
        if not heavy_all[u] or hi == lo:
            continue
        table = AliasTable(wts[lo:hi])
        picks = table.sample(alpha, rng)
        draw_src.append(np.full(alpha, u, dtype=np.int64))
        draw_dst.append(dst[lo:hi][picks])
    if draw_src:
        s_src, s_dst, s_cnt = aggregate_draws(np.concatenate(draw_src), np.concatenate(draw_dst), p.n)
    else:
        s_src, s_dst, s_cnt = aggregate_draws(np.empty(0), np.empty(0), p.n)

    heavy_count = int(heavy_all.sum())
    logger.debug(
        f"S1 component: {vertices.size} vertices, {heavy_count} heavy, "
        f"{light_edges.m} stored edges, {s_src.size} sample records"
    )
    return S1ComponentSketch(
        gamma=float(gamma),
        alpha=alpha,
        vertices=vertices,
        delta=delta,
        heavy_marginal=np.where(heavy_all[vertices], marginal_all[vertices], 0.0),
        light_edges=light_edges,
        sample_src=s_src,
        sample_dst=s_dst,
        sample_count=s_cnt,
    )


def estimate_s1(sk: S1ComponentSketch, x: np.ndarray) -> float:
    """Unbiased estimate of ``x^T L(P) x`` from an S1 component sketch.

    Edges with a light endpoint contribute both ordered pairs exactly; each
    heavy vertex contributes ``(delta^L_u / alpha) x_u sum_v x_v Y_u^v``.
    """
    x = np.asarray(x, dtype=np.float64)
    xv = x[sk.vertices]
    total = float(np.dot(sk.delta, xv * xv))
    le = sk.light_edges
    total -= 2.0 * float(np.dot(le.w, x[le.u] * x[le.v]))
    if sk.sample_src.size:
        pos = np.searchsorted(sk.vertices, sk.sample_src)
        coeff = sk.heavy_marginal[pos] / sk.alpha
        total -= float(np.dot(coeff * sk.sample_count, x[sk.sample_src] * x[sk.sample_dst]))
    return total
