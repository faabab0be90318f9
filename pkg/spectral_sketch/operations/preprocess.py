import logging
import math
from collections import deque
from typing import Deque, List, Tuple

import numpy as np

from spectral_sketch.core.config import get_settings
from spectral_sketch.core.exceptions import InvalidParameterError, PartitionInvariantError, WeightSpreadError
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.partition import PartitionResult
from spectral_sketch.operations.graph_ops import component_subgraphs
from spectral_sketch.operations.spectral import spectral_split
from spectral_sketch.schemas.report import EigenMethod, SpectralCertificate

logger = logging.getLogger(__name__)


def check_weight_spread(g: WeightedGraph) -> None:
    if g.m and g.w_max >= 2.0 * g.w_min:
        raise WeightSpreadError(
            f"Edge weights must lie within a factor of two, got [{g.w_min:.6g}, {g.w_max:.6g}]"
        )


def depth_cap(m: int) -> int:
    return int(2 * math.log2(max(m, 2)) + 10)


def cut_edge_budget(h: float, m: int) -> float:
    return get_settings().CUT_EDGE_CONSTANT * h * m * math.log2(max(m, 2))


def preprocess(g: WeightedGraph, h: float) -> PartitionResult:
    """Split ``g`` along sweep cuts until every piece has a spectral gap.

    A piece is kept once ``lambda_1`` of its normalized Laplacian reaches
    ``h^2 / 2``; otherwise its sweep cut (conductance below ``h``) is removed
    and its edges go to ``q_edges``. Depth counts how often a vertex set was
    the smaller-volume side of a split.
    """
    if not (0.0 < h <= 1.0):
        raise InvalidParameterError(f"Threshold h must lie in (0, 1], got {h}")
    check_weight_spread(g)
    stop_at = h * h / 2.0
    cap = depth_cap(g.m)

    components: List[WeightedGraph] = []
    certificates: List[SpectralCertificate] = []
    cut_graphs: List[WeightedGraph] = []
    splits = 0
    max_depth = 0

    work: Deque[Tuple[WeightedGraph, int]] = deque((c, 0) for c in component_subgraphs(g))
    while work:
        piece, depth = work.popleft()
        max_depth = max(max_depth, depth)
        if piece.m == 1:
            components.append(piece)
            certificates.append(SpectralCertificate(lambda1=2.0, method=EigenMethod.DENSE_EIG))
            continue
        cert, cut = spectral_split(piece)
        if cert.lambda1 >= stop_at:
            components.append(piece)
            certificates.append(cert)
            continue

        splits += 1
        cut_graphs.append(cut.crossing_edges)
        small = piece.induced(cut.side)
        large = piece.induced(cut.other_side(piece))
        if depth + 1 > cap:
            raise PartitionInvariantError(f"Preprocessing depth exceeded the cap of {cap}")
        logger.debug(
            f"Split {piece.m} edges at depth {depth}: phi={cut.conductance:.4g}, "
            f"lambda1={cert.lambda1:.4g}, removed {cut.crossing_edges.m}"
        )
        for sub in component_subgraphs(small):
            work.append((sub, depth + 1))
        for sub in component_subgraphs(large):
            work.append((sub, depth))

    q_edges = WeightedGraph.union_all(g.n, cut_graphs)
    if q_edges.m > cut_edge_budget(h, g.m):
        raise PartitionInvariantError(
            f"{q_edges.m} cut edges exceed the budget {cut_edge_budget(h, g.m):.1f} "
            f"for h={h} and {g.m} edges"
        )
    logger.debug(f"Preprocessing kept {len(components)} components, {q_edges.m} cut edges, {splits} splits")
    return PartitionResult(
        components=components,
        q_edges=q_edges,
        certificates=certificates,
        splits=splits,
        max_depth=max_depth,
        threshold=h,
    )


def edge_conservation_holds(g: WeightedGraph, result: PartitionResult) -> bool:
    parts = [c.edge_keys() for c in result.components] + [result.q_edges.edge_keys()]
    keys = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    return keys.size == g.m and np.array_equal(np.sort(keys), g.edge_keys())
