from typing import Union

import numpy as np

from spectral_sketch.core.exceptions import InvalidParameterError

SeedLike = Union[int, np.random.Generator, None]


def root_entropy(seed: SeedLike) -> int:
    if seed is None:
        # fresh 63-bit seed so it fits the u64 fields of a sketch file
        return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))
    if isinstance(seed, np.random.Generator):
        return int(seed.integers(2**63))
    if int(seed) < 0:
        raise InvalidParameterError(f"Seed must be non-negative, got {seed}")
    return int(seed)


def child_seed(seed: SeedLike, *path: int) -> np.random.SeedSequence:
    """Seed sequence for the stream addressed by ``path`` under ``seed``.

    Streams with different paths are statistically independent, which is what
    lets replicas, weight classes and components be built separately.
    """
    return np.random.SeedSequence(root_entropy(seed), spawn_key=tuple(int(p) for p in path))


def child_rng(seed: SeedLike, *path: int) -> np.random.Generator:
    return np.random.default_rng(child_seed(seed, *path))


def child_int(seed: SeedLike, *path: int) -> int:
    """Integer seed for a sub-build, so nested builds can derive their own streams."""
    state = child_seed(seed, *path).generate_state(1, dtype=np.uint64)
    return int(state[0] >> np.uint64(1))
