from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from spectral_sketch.schemas.params import Algorithm

SKETCH_FORMAT_VERSION = 1


class EigenMethod(str, Enum):
    DENSE_EIG = "dense-eig"
    POWER_ITERATION = "power-iteration"


class SpectralCertificate(BaseModel):
    lambda1: float = Field(..., ge=0.0, le=2.0,
                           description="Second-smallest eigenvalue of the normalized Laplacian")
    method: EigenMethod = Field(..., description="Solver that produced the value")

    model_config = ConfigDict(frozen=True)

    @field_validator("lambda1", mode="before")
    @classmethod
    def clip_roundoff(cls, v):
        # eigenvalues of the normalized Laplacian lie in [0, 2] up to round-off
        v = float(v)
        if -1e-9 <= v < 0.0:
            return 0.0
        if 2.0 < v <= 2.0 + 1e-9:
            return 2.0
        return v


class QueryReport(BaseModel):
    estimate: float = Field(..., description="Median of the per-replica estimates")
    replicas: List[float] = Field(..., min_length=1, description="Per-replica estimates")
    exact: Optional[float] = Field(None, description="Exact quadratic form, when a graph was supplied")
    relative_error: Optional[float] = Field(None, ge=0.0)

    @model_validator(mode="after")
    def validate_median(self) -> "QueryReport":
        median = float(np.median(self.replicas))
        if not np.isclose(self.estimate, median, rtol=1e-12, atol=0.0):
            raise ValueError("Estimate must equal the median of the replica estimates")
        return self


class SizeReport(BaseModel):
    """Storage used by a sketch, as raw record counts and as bits.

    Vertex ids take ``ceil(log2 n)`` bits, weights and degree values 32 bits,
    sample multiplicities ``ceil(log2 draws) + 1`` bits.
    """

    n: int = Field(0, ge=0)
    replicas: int = Field(1, ge=0)
    stored_edges: int = Field(0, ge=0, description="Edges kept verbatim")
    sample_draws: int = Field(0, ge=0, description="Total number of draws with replacement")
    sample_records: int = Field(0, ge=0, description="Distinct sampled pairs with a multiplicity")
    degree_entries: int = Field(0, ge=0, description="Stored per-vertex degree values")
    records: int = Field(0, ge=0, description="stored_edges + sample_records")
    stored_edge_bits: int = Field(0, ge=0)
    sample_bits: int = Field(0, ge=0)
    degree_table_bits: int = Field(0, ge=0)
    total_bits: int = Field(0, ge=0)

    def __add__(self, other: "SizeReport") -> "SizeReport":
        fields = [name for name in SizeReport.model_fields if name != "n"]
        merged = {name: getattr(self, name) + getattr(other, name) for name in fields}
        return SizeReport(n=max(self.n, other.n), **merged)


class SketchHeader(BaseModel):
    format_version: int = Field(SKETCH_FORMAT_VERSION, ge=1)
    algorithm: Algorithm
    eps: float
    delta: float
    c_alpha: float
    c_beta: float
    c_med: float
    sparsifier: str
    tight: bool = False
    h_override: Optional[float] = None
    seed: int = Field(..., ge=0)
    n: int = Field(..., ge=0)
    replicas: int = Field(..., ge=1)


class LevelDiagnostics(BaseModel):
    level: int = Field(..., ge=0)
    vertices: int = Field(..., ge=0, description="Support size of the level graph")
    edges: int = Field(..., ge=0, description="Edges after sparsification")
    eta: float = Field(..., ge=1.0, description="Measured density factor, clamped below at 1")
    eps_tilde: float = Field(..., gt=0.0)
    s: float = Field(..., gt=0.0)
    flips: int = Field(0, ge=0, description="Arcs reversed by the orientation pass")
    strata: int = Field(0, ge=0)
    peeled_arcs: int = Field(0, ge=0)
    remainder_vertices: int = Field(0, ge=0)


class S2BuildStats(BaseModel):
    kappa: int = Field(..., ge=0)
    vertices: int = Field(..., ge=0)
    removed_edges: int = Field(0, ge=0, description="Cut edges removed by preprocessing")
    halved_vertices: int = Field(0, ge=0, description="Tails whose out-degree more than halved")
    components: int = Field(0, ge=0)
    sampling_vertices: int = Field(0, ge=0)


class BenchRow(BaseModel):
    algo: Algorithm
    eps: float
    records: int
    bits: int
    mean_rel_err: float
    p95_rel_err: float
    build_ms: float
    query_us: float
