import csv
import logging
import time
from typing import Iterable, List, Sequence, TextIO

import numpy as np

from spectral_sketch.core.seeding import SeedLike, child_int, child_rng, root_entropy
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.operations.graph_ops import quadratic_form
from spectral_sketch.operations.query import build_bundle, size_report
from spectral_sketch.schemas.params import Algorithm, SketchParams
from spectral_sketch.schemas.report import BenchRow

logger = logging.getLogger(__name__)

BENCH_COLUMNS = ["algo", "eps", "records", "bits", "mean_rel_err", "p95_rel_err", "build_ms", "query_us"]


def run_bench(g: WeightedGraph, eps_values: Sequence[float], algorithms: Iterable[Algorithm],
              base: SketchParams, seed: SeedLike = None, trials: int = 20,
              workers: int = 1) -> List[BenchRow]:
    """Build every (algorithm, eps) pair and measure size, accuracy and timing.

    Size columns describe a single replica; errors are relative errors of the
    median answer against the exact quadratic form on random Gaussian vectors.
    """
    seed = root_entropy(seed)
    rows: List[BenchRow] = []
    algorithms = list(algorithms)
    for e_idx, eps in enumerate(eps_values):
        params = SketchParams(**{**base.model_dump(), "eps": float(eps)})
        for algo in algorithms:
            started = time.perf_counter()
            bundle = build_bundle(g, params, algo, seed=child_int(seed, e_idx), workers=workers)
            build_ms = (time.perf_counter() - started) * 1e3
            size = size_report(bundle.replicas[0])

            rng = child_rng(seed, e_idx, 1)
            errors = []
            query_s = 0.0
            for _ in range(trials):
                x = rng.standard_normal(g.n)
                t0 = time.perf_counter()
                report = bundle.query(x)
                query_s += time.perf_counter() - t0
                exact = quadratic_form(g, x)
                if exact > 0:
                    errors.append(abs(report.estimate - exact) / exact)
            errs = np.asarray(errors) if errors else np.zeros(1)
            rows.append(BenchRow(
                algo=algo, eps=float(eps), records=size.records, bits=size.total_bits,
                mean_rel_err=float(errs.mean()), p95_rel_err=float(np.percentile(errs, 95)),
                build_ms=build_ms, query_us=query_s / max(trials, 1) * 1e6,
            ))
            logger.info(f"bench {algo.value} eps={eps}: {size.records} records, mean error {errs.mean():.4f}")
    return rows


def write_bench_csv(rows: Iterable[BenchRow], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=BENCH_COLUMNS)
    writer.writeheader()
    for row in rows:
        record = row.model_dump()
        record["algo"] = row.algo.value
        writer.writerow(record)


def loglog_slope(eps_values: Sequence[float], records: Sequence[int]) -> float:
    """Least-squares slope of log(records) against log(1/eps)."""
    x = np.log(1.0 / np.asarray(eps_values, dtype=np.float64))
    y = np.log(np.maximum(np.asarray(records, dtype=np.float64), 1.0))
    return float(np.polyfit(x, y, 1)[0])
