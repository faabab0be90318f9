# tests/unit/test_orient.py

import numpy as np
import pytest

from spectral_sketch.core.exceptions import InvalidParameterError
from spectral_sketch.models.oriented import OrientedGraph
from spectral_sketch.operations.orient import (
    DirectionAssigner,
    assign_direction,
    orientation_is_stable,
    potential,
    random_orientation,
    violating_arcs,
)
from tests.conftest import oriented_k6, random_graph, star_graph


def test_star_potential_and_run():
    """All four arcs leave the centre of K_{1,4}: each violates with d_out gap 4."""
    og = OrientedGraph.from_graph(star_graph(4))
    assert potential(og, 2.0) == pytest.approx(16.0), f"Expected potential 16, got {potential(og, 2.0)}"

    assigner = DirectionAssigner(og, 2.0)
    result = assigner.run()
    d_out = result.out_degrees()
    assert d_out[0] == 1, f"Expected centre out-degree 1, got {d_out[0]}"
    assert assigner.flips == 3
    assert orientation_is_stable(result, 2.0)
    assert potential(result, 2.0) == 0.0


@pytest.mark.parametrize("t", [1.0, 0.5, -3.0], ids=["one", "half", "negative"])
def test_threshold_must_exceed_one(t):
    with pytest.raises(InvalidParameterError):
        DirectionAssigner(OrientedGraph.from_graph(star_graph(3)), t)


def test_stable_orientation_is_untouched():
    """Out-degrees 3 and 2 in the rotated K_6 are below t = 4, so nothing flips."""
    og = oriented_k6()
    assigner = DirectionAssigner(og, 4.0)
    result = assigner.run()
    assert assigner.flips == 0
    np.testing.assert_array_equal(result.tails, og.tails)


def test_assign_direction_keeps_edge_set(rng):
    g = random_graph(25, 0.4, rng)
    og = assign_direction(g, 3.0, seed=5)
    assert og.m == g.m
    np.testing.assert_array_equal(np.sort(og.edge_keys()), g.edge_keys())
    assert og.to_undirected().same_edges(g)


def test_random_orientation_is_seeded(rng):
    g = random_graph(20, 0.5, rng)
    a = random_orientation(g, seed=11)
    b = random_orientation(g, seed=11)
    np.testing.assert_array_equal(a.tails, b.tails)
    np.testing.assert_array_equal(a.heads, b.heads)


def test_orientation_property_and_potential_descent():
    """Every flip lowers the violating-arc potential by at least two; the result has no violating arc."""
    rng = np.random.default_rng(2718)
    pairs = 0
    trial = 0
    while pairs < 500:
        g = random_graph(int(rng.integers(5, 25)), float(rng.uniform(0.1, 0.8)), rng)
        trial += 1
        if g.m == 0:
            continue
        t = float(rng.uniform(1.5, 8.0))
        assigner = DirectionAssigner(random_orientation(g, seed=trial), t)
        before = potential(assigner.snapshot(), t)
        while assigner.step():
            after = potential(assigner.snapshot(), t)
            assert after <= before - 2.0, f"Pair {pairs}: potential went from {before} to {after} at t={t}"
            before = after
        result = assigner.snapshot()
        assert before == 0.0
        assert not violating_arcs(result, t).any(), f"Pair {pairs}: orientation not stable for t={t}"
        pairs += 1


def test_potential_counts_gap_of_each_violating_arc():
    """Arcs 0 -> 1, 0 -> 2, 0 -> 3 and 3 -> 4 at t = 2.5: the three arcs leaving vertex 0 violate."""
    og = OrientedGraph(5, [0, 0, 0, 3], [1, 2, 3, 4], np.ones(4))
    np.testing.assert_array_equal(violating_arcs(og, 2.5), [True, True, True, False])
    # d_out = (3, 0, 0, 1, 0): gaps 3, 3 and 3 - 1 = 2
    assert potential(og, 2.5) == pytest.approx(8.0)
    assert potential(og, 2.0) == pytest.approx(6.0), "At t = 2 vertex 3 is no longer below t - 1"
