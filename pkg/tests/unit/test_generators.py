# tests/unit/test_generators.py

import numpy as np
import pytest

from spectral_sketch.core.exceptions import InvalidParameterError
from spectral_sketch.operations.generators import generate


@pytest.mark.parametrize(
    "kind, n, expected_edges",
    [
        ("barbell", 8, 13),
        ("random-regular", 100, 300),
        ("complete", 6, 15),
        ("path", 10, 9),
        ("dense-core", 50, 445),
    ],
    ids=["barbell_8", "random_regular_100", "complete_6", "path_10", "dense_core_50"],
)
def test_edge_counts(kind, n, expected_edges):
    g = generate(kind, n, seed=1)
    assert g.n == n
    assert g.m == expected_edges, f"Expected {expected_edges} edges for {kind}({n}), got {g.m}"


def test_random_regular_degrees():
    g = generate("random-regular", 100, seed=3, degree=6)
    assert np.all(g.edge_counts() == 6)


def test_power_law_handshake():
    g = generate("power-law", 200, seed=4)
    assert int(g.edge_counts().sum()) == 2 * g.m
    assert g.vertices().size == 200


def test_dense_core_is_a_split_graph():
    g = generate("dense-core", 500, seed=0)
    counts = g.edge_counts()
    assert np.all(counts[:60] == 499)
    assert np.all(counts[60:] == 60)
    assert g.m == 60 * 59 // 2 + 440 * 60


def test_dense_core_weights_follow_the_seed():
    a = generate("dense-core", 60, seed=9, weights="log-uniform")
    b = generate("dense-core", 60, seed=10, weights="log-uniform")
    assert np.array_equal(a.edge_keys(), b.edge_keys())
    assert not a.same_edges(b)


def test_log_uniform_weights_in_range():
    n = 40
    g = generate("complete", n, seed=2, weights="log-uniform")
    assert g.w_min >= 1.0
    assert g.w_max <= float(n) ** 3
    assert g.w_max / g.w_min > 10.0


def test_generation_is_seeded():
    a = generate("power-law", 60, seed=9)
    b = generate("power-law", 60, seed=9)
    c = generate("power-law", 60, seed=10)
    assert a.same_edges(b)
    assert not a.same_edges(c)


@pytest.mark.parametrize(
    "kind, n, kwargs",
    [
        ("barbell", 7, {}),
        ("complete", 1, {}),
        ("random-regular", 9, {"degree": 7}),
        ("dense-core", 8, {}),
        ("power-law", 3, {}),
        ("lattice", 10, {}),
        ("path", 10, {"weights": "gaussian"}),
    ],
    ids=["odd_barbell", "single_vertex", "odd_degree_sum", "small_dense_core", "small_power_law",
         "unknown_kind", "unknown_weights"],
)
def test_invalid_generation(kind, n, kwargs):
    with pytest.raises(InvalidParameterError):
        generate(kind, n, seed=0, **kwargs)
