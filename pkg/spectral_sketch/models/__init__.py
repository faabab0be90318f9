from spectral_sketch.models.graph import Cut, DegreeTable, WeightedGraph
from spectral_sketch.models.oriented import OrientedGraph
from spectral_sketch.models.partition import ImprovedPartition, PartitionResult, Stratum, StratumKind
from spectral_sketch.models.sketch import (
    BasicClassSketch,
    BasicSketch,
    ImprovedSketch,
    S1ComponentSketch,
    S2ComponentSketch,
    S2StratumSketch,
    SketchBundle,
    SpectralSketch,
)

__all__ = [
    "BasicClassSketch",
    "BasicSketch",
    "Cut",
    "DegreeTable",
    "ImprovedPartition",
    "ImprovedSketch",
    "OrientedGraph",
    "PartitionResult",
    "S1ComponentSketch",
    "S2ComponentSketch",
    "S2StratumSketch",
    "SketchBundle",
    "SpectralSketch",
    "Stratum",
    "StratumKind",
    "WeightedGraph",
]
