import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from spectral_sketch.core.config import get_settings


class Algorithm(str, Enum):
    BASIC = "basic"
    IMPROVED = "improved"


class SparsifierBackend(str, Enum):
    RESISTANCE = "resistance"
    NONE = "none"


class SketchParams(BaseModel):
    """Accuracy target and sampling constants for one sketch build.

    Every derived quantity (per-vertex draw counts, the preprocessing
    threshold, the replica count) is computed here so that every stage of a
    build reads the same numbers.
    """

    eps: float = Field(..., gt=0, lt=1, description="Target relative error of a single query")
    delta: float = Field(0.05, gt=0, lt=1, description="Failure probability of a single query")
    c_alpha: float = Field(default_factory=lambda: get_settings().C_ALPHA, gt=0,
                           description="Constant in alpha = c_alpha * eps^(-5/3)")
    c_beta: float = Field(default_factory=lambda: get_settings().C_BETA, gt=0,
                          description="Constant in beta = c_beta * eps^(-8/5)")
    c_med: float = Field(default_factory=lambda: get_settings().C_MED, gt=0,
                         description="Constant in the number of median replicas")
    sparsifier: SparsifierBackend = Field(
        default_factory=lambda: SparsifierBackend(get_settings().SPARSIFIER.lower()),
        description="Front-end sparsifier backend",
    )
    verify_sparsifier: bool = Field(False, description="Check the sparsifier on random vectors")
    tight: bool = Field(False, description="Run every stage at eps/3 so the composed error stays below eps")
    h_override: Optional[float] = Field(None, gt=0, le=1,
                                        description="Replace the basic preprocessing threshold")

    @field_validator("sparsifier", mode="before")
    @classmethod
    def validate_sparsifier(cls, v):
        if isinstance(v, SparsifierBackend):
            return v
        allowed = {e.value for e in SparsifierBackend}
        if not isinstance(v, str) or v.lower() not in allowed:
            raise ValueError(f"Sparsifier must be one of: {', '.join(sorted(allowed))}")
        return v.lower()

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"examples": [{"eps": 0.3, "delta": 0.05}, {"eps": 0.25, "c_alpha": 4.0}]},
    )

    @property
    def working_eps(self) -> float:
        return self.eps / 3.0 if self.tight else self.eps

    @property
    def alpha(self) -> int:
        return max(1, math.ceil(self.c_alpha * self.working_eps ** (-5.0 / 3.0)))

    @property
    def beta(self) -> int:
        return max(1, math.ceil(self.c_beta * self.working_eps ** (-8.0 / 5.0)))

    @property
    def h_basic(self) -> float:
        """Preprocessing threshold of the basic pipeline, clamped into (0, 1]."""
        if self.h_override is not None:
            return self.h_override
        return min(1.0, self.alpha * self.working_eps ** 2)

    @property
    def replicas(self) -> int:
        """Odd number of independent sketches whose median answers a query."""
        return 2 * math.ceil(self.c_med / 2.0 * math.log(1.0 / self.delta)) + 1
