import logging
from collections import deque
from typing import Dict, List, Optional

import numpy as np

from spectral_sketch.core.exceptions import InvalidParameterError
from spectral_sketch.core.seeding import SeedLike, child_rng
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.oriented import OrientedGraph

logger = logging.getLogger(__name__)


class DirectionAssigner:
    """Reverses arcs ``(u, v)`` with ``d_out(u) >= t`` and ``d_out(v) < t - 1`` until none remain.

    Candidate tails wait in a FIFO queue. A tail leaves the queue once it has
    no violating arc and is queued again only when an out-neighbour's
    out-degree drops below ``t - 1``.
    """

    def __init__(self, og: OrientedGraph, t: float):
        if t <= 1:
            raise InvalidParameterError(f"Threshold t must exceed 1, got {t}")
        self.t = float(t)
        self.n = og.n
        self.tails = og.tails.copy()
        self.heads = og.heads.copy()
        self.weights = og.weights
        self.out_arcs: List[Dict[int, None]] = [dict() for _ in range(og.n)]
        self.in_arcs: List[Dict[int, None]] = [dict() for _ in range(og.n)]
        for e, (a, b) in enumerate(zip(self.tails.tolist(), self.heads.tolist())):
            self.out_arcs[a][e] = None
            self.in_arcs[b][e] = None
        self.d_out = np.bincount(self.tails, minlength=og.n).astype(np.int64)
        self.queue = deque(int(u) for u in np.flatnonzero(self.d_out >= self.t))
        self.queued = np.zeros(og.n, dtype=bool)
        self.queued[list(self.queue)] = True
        self.flips = 0

    def _enqueue(self, u: int) -> None:
        if not self.queued[u] and self.d_out[u] >= self.t:
            self.queued[u] = True
            self.queue.append(u)

    def _violating_arc(self, u: int) -> Optional[int]:
        limit = self.t - 1.0
        for e in self.out_arcs[u]:
            if self.d_out[self.heads[e]] < limit:
                return e
        return None

    def step(self) -> bool:
        """Reverse one violating arc; return False once the orientation is stable."""
        while self.queue:
            u = self.queue[0]
            if self.d_out[u] < self.t:
                self.queue.popleft()
                self.queued[u] = False
                continue
            e = self._violating_arc(u)
            if e is None:
                self.queue.popleft()
                self.queued[u] = False
                continue
            v = int(self.heads[e])
            del self.out_arcs[u][e]
            del self.in_arcs[v][e]
            self.out_arcs[v][e] = None
            self.in_arcs[u][e] = None
            self.tails[e], self.heads[e] = v, u
            self.d_out[u] -= 1
            self.d_out[v] += 1
            self.flips += 1
            if self.d_out[u] < self.t - 1.0:
                for f in self.in_arcs[u]:
                    self._enqueue(int(self.tails[f]))
            return True
        return False

    def run(self) -> OrientedGraph:
        while self.step():
            pass
        return self.snapshot()

    def snapshot(self) -> OrientedGraph:
        return OrientedGraph(self.n, self.tails, self.heads, self.weights)


def random_orientation(g: WeightedGraph, seed: SeedLike = None) -> OrientedGraph:
    rng = child_rng(seed)
    return OrientedGraph.from_graph(g, rng.random(g.m) < 0.5)


def assign_direction(g: WeightedGraph, t: float, seed: SeedLike = None) -> OrientedGraph:
    """Orient ``g`` so every arc ``(u, v)`` has ``d_out(u) < t`` or ``d_out(v) >= t - 1``."""
    assigner = DirectionAssigner(random_orientation(g, seed), t)
    og = assigner.run()
    logger.debug(f"Orientation with t={t:.4g}: {assigner.flips} flips over {g.m} arcs")
    return og


def violating_arcs(og: OrientedGraph, t: float) -> np.ndarray:
    d_out = og.out_degrees()
    return (d_out[og.tails] >= t) & (d_out[og.heads] < t - 1)


def potential(og: OrientedGraph, t: float) -> float:
    """Sum of ``d_out(u) - d_out(v)`` over violating arcs; zero iff the orientation is stable."""
    d_out = og.out_degrees()
    bad = violating_arcs(og, t)
    return float(np.sum(d_out[og.tails[bad]] - d_out[og.heads[bad]]))


def orientation_is_stable(og: OrientedGraph, t: float) -> bool:
    return not bool(np.any(violating_arcs(og, t)))
