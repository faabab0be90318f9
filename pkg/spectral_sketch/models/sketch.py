from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy as np

from spectral_sketch.core.exceptions import InvalidParameterError
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.oriented import OrientedGraph
from spectral_sketch.models.partition import ImprovedPartition
from spectral_sketch.schemas.params import Algorithm, SketchParams
from spectral_sketch.schemas.report import QueryReport, S2BuildStats, SizeReport


@dataclass
class S1ComponentSketch:
    """Sketch of one certified component with weights in ``[gamma, 2 gamma)``.

    Vertices with ``delta_u <= gamma * alpha`` are light and every edge
    touching them is kept in ``light_edges``. Each heavy vertex keeps its
    heavy-heavy marginal and ``alpha`` draws among its heavy-heavy edges,
    aggregated into ``(sample_src, sample_dst, sample_count)``.
    """

    gamma: float
    alpha: int
    vertices: np.ndarray
    delta: np.ndarray
    heavy_marginal: np.ndarray
    light_edges: WeightedGraph
    sample_src: np.ndarray
    sample_dst: np.ndarray
    sample_count: np.ndarray

    @property
    def threshold(self) -> float:
        return self.gamma * self.alpha

    @property
    def heavy(self) -> np.ndarray:
        return self.delta > self.threshold

    def estimate(self, x: np.ndarray) -> float:
        from spectral_sketch.operations.s1 import estimate_s1
        return estimate_s1(self, x)


@dataclass
class S2ComponentSketch:
    """Sketch of one certified component of a degree stratum.

    Arcs whose tail kept fewer than ``2^(kappa-1) beta`` out-arcs are stored.
    Every vertex with heavy in-arcs keeps ``beta`` draws among them, with
    probabilities proportional to weight over ``heavy_in``.
    """

    kappa: int
    beta: int
    gamma: float
    vertices: np.ndarray
    delta: np.ndarray
    heavy_in: np.ndarray
    s_arcs: OrientedGraph
    sample_head: np.ndarray
    sample_tail: np.ndarray
    sample_count: np.ndarray

    def estimate(self, x: np.ndarray) -> float:
        from spectral_sketch.operations.s2 import estimate_s2
        return estimate_s2(self, x)


@dataclass
class BasicClassSketch:
    index: int
    gamma: float
    q: WeightedGraph
    components: List[S1ComponentSketch]
    splits: int = 0


@dataclass
class S2StratumSketch:
    kappa: int
    weight_class: int
    gamma: float
    q: WeightedGraph
    components: List[S2ComponentSketch]
    stats: Optional[S2BuildStats] = None


class SpectralSketch:
    """Common surface of the two sketch constructions."""

    algorithm: Algorithm

    def __init__(self, n: int, params: SketchParams, seed: int):
        self.n = int(n)
        self.params = params
        self.seed = int(seed)

    @classmethod
    def build(cls, algorithm: Union[str, Algorithm], g: WeightedGraph, params: SketchParams, seed: int) -> "SpectralSketch":
        """Factory method dispatching on the algorithm name"""
        from spectral_sketch.operations.basic import build_basic
        from spectral_sketch.operations.s2 import build_improved

        builders = {
            'basic': build_basic,
            'improved': build_improved,
        }
        builder = builders.get(str(getattr(algorithm, "value", algorithm)).lower())
        if not builder:
            raise InvalidParameterError(f"Unsupported sketch algorithm: {algorithm}")
        return builder(g, params, seed)

    def estimate(self, x) -> float:
        raise NotImplementedError

    def size_report(self) -> SizeReport:
        from spectral_sketch.operations.query import size_report
        return size_report(self)

    def __repr__(self):
        return f"<{type(self).__name__}(n={self.n}, eps={self.params.eps}, seed={self.seed})>"


class BasicSketch(SpectralSketch):
    algorithm = Algorithm.BASIC

    def __init__(self, n: int, params: SketchParams, seed: int, classes: List[BasicClassSketch],
                 eta: float = 0.0, sparsified_edges: int = 0):
        super().__init__(n, params, seed)
        self.classes = classes
        self.eta = eta
        self.sparsified_edges = sparsified_edges

    def estimate(self, x) -> float:
        from spectral_sketch.operations.basic import estimate_basic
        return estimate_basic(self, x)


class ImprovedSketch(SpectralSketch):
    algorithm = Algorithm.IMPROVED

    def __init__(self, n: int, params: SketchParams, seed: int, stored: List[WeightedGraph],
                 s2_strata: List[S2StratumSketch], partition: Optional[ImprovedPartition] = None):
        super().__init__(n, params, seed)
        self.stored = stored
        self.s2_strata = s2_strata
        self.partition = partition

    def estimate(self, x) -> float:
        from spectral_sketch.operations.s2 import estimate_improved
        return estimate_improved(self, x)


@dataclass
class SketchBundle:
    """Independent replicas of one sketch; queries return their median."""

    algorithm: Algorithm
    params: SketchParams
    seed: int
    n: int
    replicas: List[SpectralSketch] = field(default_factory=list)

    def query(self, x, exact_graph: Optional[WeightedGraph] = None) -> QueryReport:
        from spectral_sketch.operations.query import median_query
        return median_query(self.replicas, x, exact_graph=exact_graph)

    def size_report(self) -> SizeReport:
        from spectral_sketch.operations.query import size_report
        return size_report(self)
