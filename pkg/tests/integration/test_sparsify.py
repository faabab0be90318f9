# tests/integration/test_sparsify.py

import logging

import numpy as np
import pytest

from spectral_sketch.core.exceptions import InvalidParameterError, SparsifierError, WeightRatioError
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.operations.generators import generate
from spectral_sketch.operations.graph_ops import quadratic_form
from spectral_sketch.operations.sparsify import (
    check_weight_ratio,
    effective_resistances,
    size_bound,
    sparsify,
)
from tests.conftest import complete_graph, path_graph, random_graph


def test_small_graph_passes_through(k6):
    """K_6 at eps = 0.5 has 15 edges, under the bound 6 ln 6 / 0.25."""
    out = sparsify(k6, 0.5, seed=0)
    assert out.passthrough
    assert out.graph is k6
    assert out.eta == pytest.approx(15 * 0.25 / 6)


def test_dense_graph_is_sampled():
    g = complete_graph(50)
    bound = size_bound(50, 0.5)
    assert g.m > bound
    out = sparsify(g, 0.5, seed=3, verify=True)
    assert not out.passthrough
    # kept count is a sum of independent draws with mean at most the bound
    assert out.graph.m <= bound + 5 * np.sqrt(bound)
    assert out.verified is True
    assert out.max_relative_error <= 0.5
    assert np.all(out.graph.w > 0)


def test_sampling_is_seeded():
    g = complete_graph(50)
    a = sparsify(g, 0.5, seed=8).graph
    b = sparsify(g, 0.5, seed=8).graph
    assert a.same_edges(b)


def test_sparsifier_is_unbiased_on_average():
    g = complete_graph(40)
    x = np.random.default_rng(5).standard_normal(40)
    exact = quadratic_form(g, x)
    values = np.array([quadratic_form(sparsify(g, 0.5, seed=s).graph, x) for s in range(200)])
    se = values.std(ddof=1) / np.sqrt(values.size)
    assert abs(values.mean() - exact) < 4 * se + 1e-9, f"Mean {values.mean()} vs exact {exact} (se {se})"


def test_symmetric_edges_share_one_weight():
    """Edges with equal resistance are reweighted identically, so the split graph keeps two weights."""
    g = generate("dense-core", 100, seed=0)
    out = sparsify(g, 0.7, seed=4)
    assert not out.passthrough
    assert np.unique(np.round(out.graph.w, 6)).size <= 2


def test_edges_are_kept_independently():
    """Expected kept count matches the size bound when no probability saturates."""
    g = complete_graph(50)
    bound = size_bound(50, 0.5)
    counts = np.array([sparsify(g, 0.5, seed=s).graph.m for s in range(40)])
    assert abs(counts.mean() - bound) < 4 * counts.std(ddof=1) / np.sqrt(counts.size) + 1.0


def test_none_backend_requires_small_input():
    with pytest.raises(SparsifierError):
        sparsify(complete_graph(50), 0.5, backend="none")


def test_none_backend_accepts_small_input(k6):
    assert sparsify(k6, 0.5, backend="none").passthrough


def test_verification_skipped_on_large_graph(caplog):
    g = generate("complete", 210, seed=0)
    with caplog.at_level(logging.WARNING):
        out = sparsify(g, 0.9, seed=1, verify=True)
    assert out.verified is None
    assert "Skipping sparsifier verification" in caplog.text


@pytest.mark.parametrize("eps", [0.0, 1.0, -0.5], ids=["zero", "one", "negative"])
def test_eps_range(k6, eps):
    with pytest.raises(InvalidParameterError):
        sparsify(k6, eps)


# ---------------------------------------------
# Effective resistance and weight ratio
# ---------------------------------------------

def test_resistances_of_path_and_complete_graph():
    np.testing.assert_allclose(effective_resistances(path_graph(5)), np.ones(4), rtol=1e-9)
    np.testing.assert_allclose(effective_resistances(complete_graph(6)), np.full(15, 2.0 / 6.0), rtol=1e-9)


def test_foster_identity(rng):
    """sum_e w_e R_e = n - 1 on a connected graph."""
    g = complete_graph(12)
    g = WeightedGraph(12, g.u, g.v, rng.uniform(0.5, 3.0, size=g.m))
    total = float(np.dot(g.w, effective_resistances(g)))
    assert total == pytest.approx(11.0, rel=1e-8)


def test_weight_ratio_limit():
    ok = WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1000.0)])
    assert check_weight_ratio(ok) == pytest.approx(1000.0)
    single = WeightedGraph.from_edges(2, [(0, 1, 4.0)])
    assert check_weight_ratio(single) == 1.0
    assert check_weight_ratio(WeightedGraph.empty(4)) == 1.0
    extreme = WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1e300)])
    with pytest.raises(WeightRatioError):
        check_weight_ratio(extreme)


def test_random_graph_quality():
    """Sampled graphs keep random quadratic forms within eps on moderately dense inputs."""
    rng = np.random.default_rng(17)
    g = random_graph(60, 0.9, rng)
    out = sparsify(g, 0.6, seed=2)
    assert not out.passthrough
    errors = []
    for _ in range(50):
        x = rng.standard_normal(g.n)
        exact = quadratic_form(g, x)
        errors.append(abs(quadratic_form(out.graph, x) - exact) / exact)
    assert max(errors) <= 0.6, f"Worst relative error {max(errors)}"
