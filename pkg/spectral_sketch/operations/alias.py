import numpy as np

from spectral_sketch.core.exceptions import InvalidParameterError


class AliasTable:
    """Vose alias table: O(k) setup, O(1) per draw with replacement."""

    __slots__ = ("size", "prob", "alias")

    def __init__(self, weights):
        weights = np.asarray(weights, dtype=np.float64)
        if weights.ndim != 1 or weights.size == 0:
            raise InvalidParameterError("Alias table needs a non-empty 1-D weight vector")
        if np.any(weights < 0) or not np.all(np.isfinite(weights)) or weights.sum() <= 0:
            raise InvalidParameterError("Alias weights must be finite, non-negative, not all zero")
        k = weights.size
        scaled = weights * (k / weights.sum())
        prob = np.ones(k, dtype=np.float64)
        alias = np.arange(k, dtype=np.int64)
        small = [i for i in range(k) if scaled[i] < 1.0]
        large = [i for i in range(k) if scaled[i] >= 1.0]
        while small and large:
            s = small.pop()
            g = large.pop()
            prob[s] = scaled[s]
            alias[s] = g
            scaled[g] -= 1.0 - scaled[s]
            if scaled[g] < 1.0:
                small.append(g)
            else:
                large.append(g)
        # leftovers are 1 up to round-off
        for i in small + large:
            prob[i] = 1.0
            alias[i] = i
        self.size = k
        self.prob = prob
        self.alias = alias

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Indices of ``count`` independent draws."""
        slot = rng.integers(0, self.size, size=count)
        keep = rng.random(count) < self.prob[slot]
        return np.where(keep, slot, self.alias[slot])

    def probabilities(self) -> np.ndarray:
        """Distribution encoded by the table, reconstructed from the columns."""
        p = self.prob / self.size
        return p + np.bincount(self.alias, weights=(1.0 - self.prob) / self.size, minlength=self.size)
