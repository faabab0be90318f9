import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Union

import numpy as np

from spectral_sketch.core.config import get_settings
from spectral_sketch.core.exceptions import DimensionMismatchError, InvalidParameterError
from spectral_sketch.core.seeding import SeedLike, child_int, root_entropy
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.sketch import BasicSketch, ImprovedSketch, SketchBundle, SpectralSketch
from spectral_sketch.operations.graph_ops import as_query_vector, quadratic_form
from spectral_sketch.schemas.params import Algorithm, SketchParams
from spectral_sketch.schemas.report import QueryReport, SizeReport

logger = logging.getLogger(__name__)

WEIGHT_BITS = 32


def median_query(replicas: Sequence[SpectralSketch], x, exact_graph: Optional[WeightedGraph] = None) -> QueryReport:
    """Median of independent replica estimates, with the exact value when a graph is given."""
    if not replicas:
        raise InvalidParameterError("At least one replica is required")
    if len(replicas) % 2 == 0:
        raise InvalidParameterError(f"Replica count must be odd, got {len(replicas)}")
    n = replicas[0].n
    if any(r.n != n for r in replicas):
        raise DimensionMismatchError("Replicas disagree on the vertex count")
    x = as_query_vector(x, n)
    values = [float(r.estimate(x)) for r in replicas]
    estimate = float(np.median(values))
    exact = rel = None
    if exact_graph is not None:
        exact = quadratic_form(exact_graph, x)
        rel = abs(estimate - exact) / exact if exact > 0 else abs(estimate)
    return QueryReport(estimate=estimate, replicas=values, exact=exact, relative_error=rel)


def build_replicas(g: WeightedGraph, params: SketchParams, algorithm: Union[str, Algorithm],
                   seed: SeedLike = None, workers: Optional[int] = None) -> List[SpectralSketch]:
    """``params.replicas`` fully independent sketches, each under its own derived seed."""
    seed = root_entropy(seed)
    workers = get_settings().BUILD_WORKERS if workers is None else workers
    seeds = [child_int(seed, k) for k in range(params.replicas)]

    def build(replica_seed: int) -> SpectralSketch:
        return SpectralSketch.build(algorithm, g, params, replica_seed)

    logger.info(f"Building {len(seeds)} {getattr(algorithm, 'value', algorithm)} replicas with {workers} worker(s)")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(build, seeds))
    return [build(s) for s in seeds]


def build_bundle(g: WeightedGraph, params: SketchParams, algorithm: Union[str, Algorithm],
                 seed: SeedLike = None, workers: Optional[int] = None) -> SketchBundle:
    seed = root_entropy(seed)
    algorithm = Algorithm(str(getattr(algorithm, "value", algorithm)).lower())
    replicas = build_replicas(g, params, algorithm, seed=seed, workers=workers)
    return SketchBundle(algorithm=algorithm, params=params, seed=seed, n=g.n, replicas=replicas)


def _id_bits(n: int) -> int:
    return int(math.ceil(math.log2(n))) if n > 1 else 0


def _count_bits(draws: int) -> int:
    return int(math.ceil(math.log2(draws))) + 1 if draws > 1 else 1


def _report(n: int, stored_edges: int, draws: int, records: int, degree_entries: int, per_vertex_draws: int) -> SizeReport:
    ids = _id_bits(n)
    edge_bits = stored_edges * (2 * ids + WEIGHT_BITS)
    sample_bits = records * (2 * ids + _count_bits(per_vertex_draws))
    degree_bits = degree_entries * (ids + WEIGHT_BITS)
    return SizeReport(
        n=n,
        replicas=1,
        stored_edges=stored_edges,
        sample_draws=draws,
        sample_records=records,
        degree_entries=degree_entries,
        records=stored_edges + records,
        stored_edge_bits=edge_bits,
        sample_bits=sample_bits,
        degree_table_bits=degree_bits,
        total_bits=edge_bits + sample_bits + degree_bits,
    )


def _basic_report(sk: BasicSketch) -> SizeReport:
    stored = draws = records = entries = 0
    for cls in sk.classes:
        stored += cls.q.m
        for c in cls.components:
            stored += c.light_edges.m
            draws += int(c.sample_count.sum())
            records += int(c.sample_src.size)
            entries += int(c.vertices.size) + int(np.count_nonzero(c.heavy))
    return _report(sk.n, stored, draws, records, entries, sk.params.alpha)


def _improved_report(sk: ImprovedSketch) -> SizeReport:
    stored = sum(h.m for h in sk.stored)
    draws = records = entries = 0
    for stratum in sk.s2_strata:
        stored += stratum.q.m
        for c in stratum.components:
            stored += c.s_arcs.m
            draws += int(c.sample_count.sum())
            records += int(c.sample_head.size)
            entries += 2 * int(c.vertices.size)
    return _report(sk.n, stored, draws, records, entries, sk.params.beta)


def size_report(sk: Union[SpectralSketch, SketchBundle]) -> SizeReport:
    """Record and bit counts; a bundle reports the sum over its replicas."""
    if isinstance(sk, SketchBundle):
        total = SizeReport(n=sk.n, replicas=0)
        for replica in sk.replicas:
            total = total + size_report(replica)
        return total
    if isinstance(sk, BasicSketch):
        return _basic_report(sk)
    if isinstance(sk, ImprovedSketch):
        return _improved_report(sk)
    raise InvalidParameterError(f"Cannot size {type(sk).__name__}")
