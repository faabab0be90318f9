# tests/unit/test_seeding.py

import numpy as np
import pytest

from spectral_sketch.core.exceptions import InvalidParameterError
from spectral_sketch.core.seeding import child_int, child_rng, root_entropy


def test_child_streams_are_reproducible():
    assert child_int(42, 1, 3) == child_int(42, 1, 3)
    np.testing.assert_array_equal(child_rng(42, 0).random(5), child_rng(42, 0).random(5))


def test_child_streams_differ_by_path():
    values = {child_int(42, k) for k in range(50)}
    assert len(values) == 50, "Derived seeds collided"
    assert child_int(42, 1, 0) != child_int(42, 0, 1)


def test_child_int_fits_signed_64_bits():
    for k in range(20):
        assert 0 <= child_int(7, k) < 2**63


def test_root_entropy():
    assert root_entropy(17) == 17
    fresh = root_entropy(None)
    assert 0 <= fresh < 2**63
    from_generator = root_entropy(np.random.default_rng(1))
    assert from_generator == root_entropy(np.random.default_rng(1))
    with pytest.raises(InvalidParameterError, match="non-negative"):
        root_entropy(-1)
