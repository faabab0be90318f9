import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from spectral_sketch.core.exceptions import GraphValidationError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, float]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class WeightedGraph:
    """Undirected, positively weighted simple graph over vertex ids ``0..n-1``.

    Edges are stored as three parallel arrays with ``u < v``, sorted by
    ``(u, v)``. Subgraphs keep the global id space, so a component's edges can
    be evaluated against a query vector of the full graph directly.
    Instances are immutable.
    """

    __slots__ = ("n", "u", "v", "w")

    def __init__(self, n: int, u, v, w, *, coalesce: bool = True):
        n = int(n)
        if n < 0:
            raise GraphValidationError(f"Vertex count must be non-negative, got {n}")
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        w = np.asarray(w, dtype=np.float64).ravel()
        if not (u.shape == v.shape == w.shape):
            raise GraphValidationError("Edge arrays must have equal length")
        if u.size:
            if u.min() < 0 or v.min() < 0 or u.max() >= n or v.max() >= n:
                raise GraphValidationError(f"Vertex ids must lie in [0, {n})")
            if np.any(u == v):
                bad = int(u[np.argmax(u == v)])
                raise GraphValidationError(f"Self-loop on vertex {bad} is not allowed")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise GraphValidationError("Edge weights must be finite and strictly positive")
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        if coalesce and lo.size:
            keys = lo * max(n, 1) + hi
            uniq, inverse = np.unique(keys, return_inverse=True)
            if uniq.size != keys.size:
                logger.debug(f"Coalesced {keys.size - uniq.size} parallel edges")
            w = np.bincount(inverse, weights=w, minlength=uniq.size)
            lo = uniq // max(n, 1)
            hi = uniq % max(n, 1)
        self.n = n
        self.u = _frozen(lo)
        self.v = _frozen(hi)
        self.w = _frozen(np.ascontiguousarray(w, dtype=np.float64))

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[float]]) -> "WeightedGraph":
        """Build a graph from ``(u, v, w)`` triples; parallel edges are summed."""
        rows = [tuple(e) for e in edges]
        for row in rows:
            if len(row) != 3:
                raise GraphValidationError(f"Edge must be a (u, v, w) triple, got {row!r}")
        if not rows:
            return cls.empty(n)
        u, v, w = zip(*rows)
        uf = np.asarray(u, dtype=np.float64)
        vf = np.asarray(v, dtype=np.float64)
        if np.any(uf != np.round(uf)) or np.any(vf != np.round(vf)):
            raise GraphValidationError("Vertex ids must be integers")
        return cls(n, uf.astype(np.int64), vf.astype(np.int64), w)

    @classmethod
    def empty(cls, n: int) -> "WeightedGraph":
        return cls(n, [], [], [])

    def _take(self, mask: np.ndarray) -> "WeightedGraph":
        return WeightedGraph(self.n, self.u[mask], self.v[mask], self.w[mask], coalesce=False)

    # ------------------------------------------------------------------
    # basic queries
    # ------------------------------------------------------------------
    @property
    def m(self) -> int:
        return int(self.w.size)

    @property
    def w_min(self) -> float:
        return float(self.w.min()) if self.m else 0.0

    @property
    def w_max(self) -> float:
        return float(self.w.max()) if self.m else 0.0

    @property
    def total_weight(self) -> float:
        return float(self.w.sum())

    def edges(self) -> List[Edge]:
        return [(int(a), int(b), float(c)) for a, b, c in zip(self.u, self.v, self.w)]

    def edge_keys(self) -> np.ndarray:
        """Sorted integer key ``u * n + v`` per edge, usable for set algebra."""
        return self.u * max(self.n, 1) + self.v

    def vertices(self) -> np.ndarray:
        """Support of the graph: sorted ids of vertices with at least one edge."""
        return np.unique(np.concatenate([self.u, self.v]))

    def weighted_degrees(self) -> np.ndarray:
        return np.bincount(self.u, weights=self.w, minlength=self.n) + np.bincount(
            self.v, weights=self.w, minlength=self.n
        )

    def edge_counts(self) -> np.ndarray:
        return np.bincount(self.u, minlength=self.n) + np.bincount(self.v, minlength=self.n)

    def degrees(self) -> "DegreeTable":
        return DegreeTable(weighted=_frozen(self.weighted_degrees()), unweighted=_frozen(self.edge_counts()))

    # ------------------------------------------------------------------
    # derived graphs
    # ------------------------------------------------------------------
    def edge_subgraph(self, mask: np.ndarray) -> "WeightedGraph":
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != self.w.shape:
            raise GraphValidationError("Edge mask must have one entry per edge")
        return self._take(mask)

    def induced(self, vertices: np.ndarray) -> "WeightedGraph":
        """Edges with both endpoints in ``vertices``, still in the global id space."""
        inside = np.zeros(self.n, dtype=bool)
        inside[np.asarray(vertices, dtype=np.int64)] = True
        return self._take(inside[self.u] & inside[self.v])

    def crossing(self, vertices: np.ndarray) -> "WeightedGraph":
        inside = np.zeros(self.n, dtype=bool)
        inside[np.asarray(vertices, dtype=np.int64)] = True
        return self._take(inside[self.u] != inside[self.v])

    @classmethod
    def union_all(cls, n: int, graphs: Iterable["WeightedGraph"]) -> "WeightedGraph":
        graphs = list(graphs)
        if not graphs:
            return cls.empty(n)
        return cls(
            n,
            np.concatenate([g.u for g in graphs]),
            np.concatenate([g.v for g in graphs]),
            np.concatenate([g.w for g in graphs]),
        )

    def relabel(self) -> Tuple["WeightedGraph", np.ndarray]:
        """Compact copy over ``0..k-1`` for the ``k`` support vertices, plus the id map."""
        ids = self.vertices()
        local_u = np.searchsorted(ids, self.u)
        local_v = np.searchsorted(ids, self.v)
        return WeightedGraph(ids.size, local_u, local_v, self.w, coalesce=False), ids

    def with_vertex_count(self, n: int) -> "WeightedGraph":
        return WeightedGraph(n, self.u, self.v, self.w, coalesce=False)

    # ------------------------------------------------------------------
    # matrices
    # ------------------------------------------------------------------
    def adjacency(self) -> sp.csr_matrix:
        rows = np.concatenate([self.u, self.v])
        cols = np.concatenate([self.v, self.u])
        data = np.concatenate([self.w, self.w])
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def laplacian(self) -> sp.csr_matrix:
        return (sp.diags(self.weighted_degrees()) - self.adjacency()).tocsr()

    def same_edges(self, other: "WeightedGraph", rtol: float = 1e-12) -> bool:
        if self.n != other.n or self.m != other.m:
            return False
        return bool(
            np.array_equal(self.u, other.u)
            and np.array_equal(self.v, other.v)
            and np.allclose(self.w, other.w, rtol=rtol, atol=0.0)
        )

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"<WeightedGraph(n={self.n}, m={self.m})>"


@dataclass(frozen=True)
class DegreeTable:
    """Weighted degree ``δ_u`` and edge count ``d_u`` per vertex."""

    weighted: np.ndarray
    unweighted: np.ndarray

    def volume(self, vertices: np.ndarray) -> float:
        return float(self.weighted[np.asarray(vertices, dtype=np.int64)].sum())


@dataclass(frozen=True)
class Cut:
    """A cut reported by its smaller-volume side."""

    side: np.ndarray
    conductance: float
    crossing_edges: WeightedGraph
    side_volume: float
    rest_volume: float

    @classmethod
    def from_side(cls, g: WeightedGraph, side: np.ndarray) -> "Cut":
        support = g.vertices()
        side = np.intersect1d(np.asarray(side, dtype=np.int64), support)
        if side.size == 0 or side.size == support.size:
            raise GraphValidationError("A cut needs a non-empty proper subset of the support")
        deg = g.weighted_degrees()
        vol_side = float(deg[side].sum())
        vol_rest = float(deg[support].sum()) - vol_side
        if vol_side > vol_rest:
            side = np.setdiff1d(support, side)
            vol_side, vol_rest = vol_rest, vol_side
        crossing = g.crossing(side)
        phi = crossing.total_weight / vol_side
        return cls(side=_frozen(side), conductance=phi, crossing_edges=crossing,
                   side_volume=vol_side, rest_volume=vol_rest)

    def other_side(self, g: WeightedGraph) -> np.ndarray:
        return np.setdiff1d(g.vertices(), self.side)
