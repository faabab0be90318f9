import logging

import numpy as np

from spectral_sketch.core.seeding import SeedLike, child_int, root_entropy
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.sketch import BasicClassSketch, BasicSketch
from spectral_sketch.operations.graph_ops import as_query_vector, class_base, quadratic_form, weight_class_partition
from spectral_sketch.operations.preprocess import preprocess
from spectral_sketch.operations.s1 import build_s1
from spectral_sketch.operations.sparsify import check_weight_ratio, sparsify
from spectral_sketch.schemas.params import SketchParams

logger = logging.getLogger(__name__)

# stream ids under the master seed
_SPARSIFY_STREAM = 0
_COMPONENT_STREAM = 1


def build_basic(g: WeightedGraph, params: SketchParams, seed: SeedLike = None) -> BasicSketch:
    """Sparsify, split by weight class, preprocess each class, S1-sketch each component."""
    seed = root_entropy(seed)
    check_weight_ratio(g)
    eps = params.working_eps
    sparse = sparsify(g, eps, seed=child_int(seed, _SPARSIFY_STREAM),
                      backend=params.sparsifier, verify=params.verify_sparsifier)
    h = params.h_basic
    w_min = sparse.graph.w_min

    classes = []
    for index, class_graph in weight_class_partition(sparse.graph):
        gamma = class_base(index, w_min)
        result = preprocess(class_graph, h)
        components = [
            build_s1(component, params, gamma, seed=child_int(seed, _COMPONENT_STREAM, index, c))
            for c, component in enumerate(result.components)
        ]
        classes.append(BasicClassSketch(index=index, gamma=gamma, q=result.q_edges,
                                        components=components, splits=result.splits))
        logger.debug(
            f"Weight class {index}: {class_graph.m} edges, {len(components)} components, "
            f"{result.q_edges.m} cut edges"
        )
    logger.info(
        f"Built basic sketch: n={g.n}, alpha={params.alpha}, h={h:.4g}, "
        f"{len(classes)} weight classes, {sum(len(c.components) for c in classes)} components"
    )
    return BasicSketch(g.n, params, seed, classes, eta=sparse.eta, sparsified_edges=sparse.graph.m)


def estimate_basic(sk: BasicSketch, x) -> float:
    """Sum of component estimates plus exact cut-edge forms over all weight classes."""
    x = as_query_vector(x, sk.n)
    total = 0.0
    for cls in sk.classes:
        total += quadratic_form(cls.q, x)
        for component in cls.components:
            total += component.estimate(x)
    return float(total)


def sampling_occurred(sk: BasicSketch) -> bool:
    return any(int(np.sum(comp.sample_count)) > 0 for cls in sk.classes for comp in cls.components)
