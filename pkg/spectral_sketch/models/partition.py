from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.oriented import OrientedGraph
from spectral_sketch.schemas.report import LevelDiagnostics, SpectralCertificate


@dataclass
class PartitionResult:
    """Output of recursive preprocessing: certified pieces plus removed cut edges."""

    components: List[WeightedGraph]
    q_edges: WeightedGraph
    certificates: List[SpectralCertificate] = field(default_factory=list)
    splits: int = 0
    max_depth: int = 0
    threshold: float = 1.0


class StratumKind(str, Enum):
    WHOLE = "whole"
    LOW = "low"
    DEGREE = "degree"


@dataclass
class Stratum:
    """Arcs of one weight class whose tails share an out-degree band.

    ``LOW`` strata have every tail below ``beta``; ``DEGREE`` strata have
    tails in ``[2^kappa beta, 2^(kappa+1) beta)``; ``WHOLE`` holds a graph
    too small to decompose further.
    """

    kind: StratumKind
    arcs: OrientedGraph
    level: int
    weight_class: Optional[int] = None
    gamma: Optional[float] = None
    kappa: Optional[int] = None
    s: Optional[float] = None

    @property
    def stored_whole(self) -> bool:
        return self.kind in (StratumKind.WHOLE, StratumKind.LOW)

    def graph(self) -> WeightedGraph:
        return self.arcs.to_undirected()


@dataclass
class ImprovedPartition:
    strata: List[Stratum]
    levels: List[LevelDiagnostics] = field(default_factory=list)

    @property
    def recursion_depth(self) -> int:
        return len(self.levels)
