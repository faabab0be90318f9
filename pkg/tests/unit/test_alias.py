# tests/unit/test_alias.py

import numpy as np
import pytest

from spectral_sketch.core.exceptions import InvalidParameterError
from spectral_sketch.operations.alias import AliasTable


@pytest.mark.parametrize(
    "weights",
    [
        [1.0, 2.0, 3.0, 4.0],
        [5.0],
        [0.0, 1.0, 1.0],
        [1e-6, 1.0, 1e6],
    ],
    ids=["increasing", "single", "with_zero", "wide_range"],
)
def test_table_encodes_distribution(weights):
    """The columns of the table reconstruct the normalized weights exactly."""
    table = AliasTable(weights)
    expected = np.asarray(weights) / np.sum(weights)
    np.testing.assert_allclose(table.probabilities(), expected, rtol=1e-9, atol=1e-12)


def test_sample_frequencies_match_weights():
    weights = np.array([1.0, 2.0, 3.0, 4.0])
    table = AliasTable(weights)
    rng = np.random.default_rng(7)
    draws = 200_000
    freq = np.bincount(table.sample(draws, rng), minlength=4) / draws
    p = weights / weights.sum()
    se = np.sqrt(p * (1 - p) / draws)
    assert np.all(np.abs(freq - p) < 4 * se), f"Frequencies {freq} too far from {p}"


def test_zero_weight_never_drawn():
    table = AliasTable([0.0, 1.0, 1.0])
    picks = table.sample(10_000, np.random.default_rng(3))
    assert not np.any(picks == 0), "An entry with zero weight was drawn"


def test_sample_count_and_range():
    table = AliasTable(np.arange(1, 11, dtype=float))
    picks = table.sample(37, np.random.default_rng(0))
    assert picks.shape == (37,)
    assert picks.min() >= 0 and picks.max() < 10


@pytest.mark.parametrize(
    "weights",
    [[], [0.0, 0.0], [1.0, -1.0], [1.0, float("nan")]],
    ids=["empty", "all_zero", "negative", "nan"],
)
def test_invalid_weights_rejected(weights):
    with pytest.raises(InvalidParameterError):
        AliasTable(weights)
