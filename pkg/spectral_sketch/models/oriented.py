from typing import Optional

import numpy as np

from spectral_sketch.core.exceptions import GraphValidationError
from spectral_sketch.models.graph import WeightedGraph


class OrientedGraph:
    """Directed companion of a simple undirected graph: one arc per edge."""

    __slots__ = ("n", "tails", "heads", "weights")

    def __init__(self, n: int, tails, heads, weights):
        self.n = int(n)
        self.tails = np.asarray(tails, dtype=np.int64).copy()
        self.heads = np.asarray(heads, dtype=np.int64).copy()
        self.weights = np.asarray(weights, dtype=np.float64).copy()
        if not (self.tails.shape == self.heads.shape == self.weights.shape):
            raise GraphValidationError("Arc arrays must have equal length")
        if np.any(self.tails == self.heads):
            raise GraphValidationError("Arcs must join distinct vertices")
        for arr in (self.tails, self.heads, self.weights):
            arr.setflags(write=False)

    @classmethod
    def from_graph(cls, g: WeightedGraph, flip: Optional[np.ndarray] = None) -> "OrientedGraph":
        """Orient every edge ``u -> v`` (``u < v``), reversed where ``flip`` is set."""
        if flip is None:
            return cls(g.n, g.u, g.v, g.w)
        flip = np.asarray(flip, dtype=bool)
        return cls(g.n, np.where(flip, g.v, g.u), np.where(flip, g.u, g.v), g.w)

    @property
    def m(self) -> int:
        return int(self.weights.size)

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.tails, minlength=self.n)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.heads, minlength=self.n)

    def weighted_in_degrees(self) -> np.ndarray:
        return np.bincount(self.heads, weights=self.weights, minlength=self.n)

    def edge_keys(self) -> np.ndarray:
        lo = np.minimum(self.tails, self.heads)
        hi = np.maximum(self.tails, self.heads)
        return lo * max(self.n, 1) + hi

    def vertices(self) -> np.ndarray:
        return np.unique(np.concatenate([self.tails, self.heads]))

    def subset(self, mask: np.ndarray) -> "OrientedGraph":
        mask = np.asarray(mask, dtype=bool)
        return OrientedGraph(self.n, self.tails[mask], self.heads[mask], self.weights[mask])

    def to_undirected(self) -> WeightedGraph:
        return WeightedGraph(self.n, self.tails, self.heads, self.weights)

    def __repr__(self) -> str:
        return f"<OrientedGraph(n={self.n}, arcs={self.m})>"
