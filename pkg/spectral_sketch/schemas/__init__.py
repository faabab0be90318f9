from spectral_sketch.schemas.params import Algorithm, SketchParams, SparsifierBackend
from spectral_sketch.schemas.report import (
    BenchRow,
    EigenMethod,
    LevelDiagnostics,
    QueryReport,
    S2BuildStats,
    SizeReport,
    SketchHeader,
    SpectralCertificate,
)

__all__ = [
    "Algorithm",
    "BenchRow",
    "EigenMethod",
    "LevelDiagnostics",
    "QueryReport",
    "S2BuildStats",
    "SizeReport",
    "SketchHeader",
    "SketchParams",
    "SparsifierBackend",
    "SpectralCertificate",
]
