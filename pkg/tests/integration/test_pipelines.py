# tests/integration/test_pipelines.py

import numpy as np
import pytest

from spectral_sketch.core.exceptions import InvalidParameterError, WeightRatioError
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.sketch import BasicSketch, ImprovedSketch, SpectralSketch
from spectral_sketch.operations.basic import build_basic, estimate_basic, sampling_occurred
from spectral_sketch.operations.generators import generate
from spectral_sketch.operations.graph_ops import quadratic_form, weight_class_partition
from spectral_sketch.operations.preprocess import preprocess
from spectral_sketch.operations.s2 import build_improved, estimate_improved
from spectral_sketch.schemas.params import SketchParams
from tests.conftest import complete_graph, path_graph, random_graph


# ---------------------------------------------
# Exactness when nothing is sampled
# ---------------------------------------------

@pytest.mark.parametrize("random_graphs", [20], indirect=True)
def test_basic_exact_without_sampling(random_graphs):
    """alpha = 32 exceeds every degree, so every edge is stored and queries are exact."""
    params = SketchParams(eps=0.5, c_alpha=10.0)
    rng = np.random.default_rng(0)
    for g in random_graphs:
        sk = build_basic(g, params, seed=1)
        assert not sampling_occurred(sk)
        for _ in range(5):
            x = rng.standard_normal(g.n)
            exact = quadratic_form(g, x)
            assert estimate_basic(sk, x) == pytest.approx(exact, rel=1e-9, abs=1e-9)


def test_improved_exact_on_sparse_graph():
    """On a path every tail has out-degree below beta, so everything lands in a stored stratum."""
    g = path_graph(10)
    sk = build_improved(g, SketchParams(eps=0.5), seed=3)
    assert sk.s2_strata == []
    x = np.random.default_rng(1).standard_normal(10)
    assert estimate_improved(sk, x) == pytest.approx(quadratic_form(g, x), rel=1e-9)


def test_improved_exact_on_tiny_graph(single_edge):
    sk = build_improved(single_edge, SketchParams(eps=0.5), seed=0)
    assert len(sk.stored) == 1
    assert sk.estimate([1.0, -1.0]) == pytest.approx(20.0)


def test_empty_graph_estimates_zero():
    g = WeightedGraph.empty(5)
    for algorithm in ("basic", "improved"):
        sk = SpectralSketch.build(algorithm, g, SketchParams(eps=0.5), 0)
        assert sk.estimate(np.ones(5)) == 0.0


# ---------------------------------------------
# Factory
# ---------------------------------------------

@pytest.mark.parametrize(
    "algorithm, expected",
    [("basic", BasicSketch), ("improved", ImprovedSketch), ("IMPROVED", ImprovedSketch)],
    ids=["basic", "improved", "upper_case"],
)
def test_factory_dispatch(k6, algorithm, expected):
    sk = SpectralSketch.build(algorithm, k6, SketchParams(eps=0.5), 0)
    assert isinstance(sk, expected)
    assert sk.n == 6


def test_factory_rejects_unknown_algorithm(k6):
    with pytest.raises(InvalidParameterError, match="Unsupported sketch algorithm"):
        SpectralSketch.build("quantum", k6, SketchParams(eps=0.5), 0)


def test_weight_ratio_checked_before_build():
    g = WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1e300)])
    with pytest.raises(WeightRatioError):
        build_basic(g, SketchParams(eps=0.5))


# ---------------------------------------------
# Unbiasedness with sampling
# ---------------------------------------------

def _check_unbiased(build, g: WeightedGraph, x: np.ndarray, trials: int, bands: float = 4.0) -> None:
    values = np.array([build(s).estimate(x) for s in range(trials)])
    exact = quadratic_form(g, x)
    se = values.std(ddof=1) / np.sqrt(trials)
    assert abs(values.mean() - exact) < bands * se + 1e-9 * abs(exact), (
        f"Mean {values.mean()} vs exact {exact} (se {se})"
    )


def test_basic_unbiased_with_heavy_vertices():
    g = complete_graph(8)
    params = SketchParams(eps=0.5, c_alpha=0.9)
    x = np.random.default_rng(4).standard_normal(8)
    sk = build_basic(g, params, seed=0)
    assert sampling_occurred(sk)
    _check_unbiased(lambda s: build_basic(g, params, seed=s), g, x, 1500)


def test_improved_unbiased_on_dense_graph():
    """K_30 is sparsified first; the sparsifier and the S2 estimator are both unbiased."""
    g = complete_graph(30)
    params = SketchParams(eps=0.5)
    x = np.random.default_rng(6).standard_normal(30)
    _check_unbiased(lambda s: build_improved(g, params, seed=s), g, x, 300)


def test_improved_samples_on_dense_core():
    g = generate("dense-core", 80, seed=2)
    params = SketchParams(eps=0.3)
    sk = build_improved(g, params, seed=5)
    assert sk.partition is not None
    assert sk.s2_strata, "Expected the core tails to form degree strata"
    sampled_heads = 0
    for stratum in sk.s2_strata:
        for c in stratum.components:
            per_head = np.bincount(c.sample_head, weights=c.sample_count, minlength=g.n)
            heads = np.flatnonzero(c.heavy_in)
            np.testing.assert_array_equal(per_head[c.vertices[heads]], np.full(heads.size, params.beta))
            sampled_heads += heads.size
    assert sampled_heads > 0


# ---------------------------------------------
# Composition across components and classes
# ---------------------------------------------

def two_disjoint_k6() -> WeightedGraph:
    shifted = [(i + 6, j + 6, 1.0) for i in range(6) for j in range(i + 1, 6)]
    return WeightedGraph.union_all(12, [
        complete_graph(6).with_vertex_count(12),
        WeightedGraph.from_edges(12, shifted),
    ])


def test_variance_adds_across_components():
    """Components draw from independent streams, so their estimates are uncorrelated."""
    g = two_disjoint_k6()
    params = SketchParams(eps=0.5, c_alpha=0.9)
    x = np.random.default_rng(8).standard_normal(12)
    trials = 1500
    totals, parts = [], []
    for s in range(trials):
        sk = build_basic(g, params, seed=s)
        assert len(sk.classes) == 1 and len(sk.classes[0].components) == 2
        assert sk.classes[0].q.m == 0
        parts.append([c.estimate(x) for c in sk.classes[0].components])
        totals.append(estimate_basic(sk, x))
    parts = np.asarray(parts)
    totals = np.asarray(totals)
    assert parts.var(axis=0, ddof=1).min() > 0.0, "Both components should sample"
    corr = np.corrcoef(parts[:, 0], parts[:, 1])[0, 1]
    assert abs(corr) < 4.0 / np.sqrt(trials), f"Component estimates correlate: {corr}"
    assert totals.var(ddof=1) == pytest.approx(parts.var(axis=0, ddof=1).sum(), rel=0.2)


def test_components_and_cut_edges_compose_per_class():
    """Per weight class, component forms plus the cut-edge form give the class form, each term non-negative."""
    bell = generate("barbell", 10, seed=0).edges()
    edges = bell + [(u + 10, v + 10, 5.0) for u, v, _ in bell] + [(i, i + 10, 30.0) for i in range(10)]
    g = WeightedGraph.from_edges(20, edges)
    h = SketchParams(eps=0.5).h_basic
    classes = [(sub, preprocess(sub, h)) for _, sub in weight_class_partition(g)]
    assert len(classes) == 3
    assert sum(result.splits for _, result in classes) >= 2, "Both barbells should lose their bridge"

    for x in np.random.default_rng(12).standard_normal((20, g.n)):
        whole = 0.0
        for class_graph, result in classes:
            terms = [quadratic_form(p, x) for p in result.components] + [quadratic_form(result.q_edges, x)]
            assert min(terms) >= 0.0
            assert sum(terms) == pytest.approx(quadratic_form(class_graph, x), rel=1e-10)
            whole += sum(terms)
        assert whole == pytest.approx(quadratic_form(g, x), rel=1e-10)


@pytest.mark.parametrize("eps", [0.5, 0.35, 0.25], ids=["eps_0.5", "eps_0.35", "eps_0.25"])
def test_size_meter_on_random_regular_graph(eps):
    """Records stay within n / eps^(5/3) log2 n on a 200-node 6-regular graph."""
    g = generate("random-regular", 200, seed=6)
    report = build_basic(g, SketchParams(eps=eps), seed=2).size_report()
    assert report.records == report.stored_edges + report.sample_records
    assert 0 < report.records <= g.m
    assert report.records <= g.n * eps ** (-5.0 / 3.0) * np.log2(g.n)


# ---------------------------------------------
# (1 + eps, delta) guarantee
# ---------------------------------------------

@pytest.mark.slow
@pytest.mark.parametrize("algorithm", ["basic", "improved"])
@pytest.mark.parametrize(
    "kind, n",
    [("random-regular", 30), ("barbell", 30), ("power-law", 30), ("random-regular", 100)],
    ids=["expander_30", "barbell_30", "power_law_30", "expander_100"],
)
def test_relative_error_guarantee(algorithm, kind, n):
    from spectral_sketch.operations.query import build_bundle

    g = generate(kind, n, seed=11)
    params = SketchParams(eps=0.3, delta=0.05)
    rng = np.random.default_rng(12)
    trials = 1000
    hits = 0
    for t in range(trials):
        bundle = build_bundle(g, params, algorithm, seed=t)
        x = rng.standard_normal(n)
        report = bundle.query(x, exact_graph=g)
        hits += report.relative_error <= params.eps
    assert hits >= 0.95 * trials, f"Only {hits}/{trials} queries within eps"
