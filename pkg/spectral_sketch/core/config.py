from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # sampling constants
    C_ALPHA: float = 2.0
    C_BETA: float = 2.0
    C_MED: float = 8.0

    # sparsifier front-end
    SPARSIFIER: str = "resistance"
    SPARSIFIER_OVERSAMPLING: float = 1.0
    RESISTANCE_DENSE_LIMIT: int = 2000
    VERIFY_MAX_VERTICES: int = 200
    VERIFY_TRIALS: int = 100
    WEIGHT_RATIO_EXPONENT: float = 8.0

    # eigensolver
    DENSE_EIG_LIMIT: int = 500
    POWER_ITERATION_TOL: float = 1e-4
    POWER_ITERATION_MAX_ITER: int = 20000

    # partition audits
    CHEEGER_ENUM_LIMIT: int = 24
    CUT_EDGE_CONSTANT: float = 8.0
    STRATUM_COUNT_CONSTANT: float = 50.0

    BUILD_WORKERS: int = 1

    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True, extra="ignore")


settings = Settings()


@lru_cache()
def get_settings() -> Settings:
    return Settings()
