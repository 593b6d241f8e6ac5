
import psutil
from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings

load_dotenv(override=True)


class Settings(BaseSettings):
    """
    A settings class for the project defining all the necessary parameters within the
    app through an object.
    """

    # App variables
    APP_NAME: str = Field("mkl-harmonize", alias="APP_NAME")

    # Logging
    LOG_LEVEL: str = Field("INFO", alias="LOG_LEVEL")
    LOG_FILE: str = Field("logs/mklh.log", alias="LOG_FILE")
    LOG_CONSOLE: bool = Field(True, alias="LOG_CONSOLE")
    LOG_TO_FILE: bool = Field(False, alias="LOG_TO_FILE")

    # Numerical defaults, overridable per command
    RIDGE_EPS: float = Field(1e-6, alias="RIDGE_EPS")
    MASK_THRESHOLD: float = Field(0.5, alias="MASK_THRESHOLD")
    CONTENT_ALPHA: float = Field(10.0, alias="CONTENT_ALPHA")
    EMA_BETA: float = Field(0.8, alias="EMA_BETA")
    DARKNESS_THRESHOLD: float = Field(0.08, alias="DARKNESS_THRESHOLD")
    SEED: int = Field(0, alias="SEED")

    # 0 means one worker per logical core
    WORKER_THREADS: int = Field(0, alias="WORKER_THREADS")

    model_config = {"env_file": ".env", "extra": "ignore", "populate_by_name": True}

    @field_validator("RIDGE_EPS", "CONTENT_ALPHA")
    @classmethod
    def validate_non_negative(cls, val: float) -> float:
        """
        Reject negative ridge and loss weights.
        """
        if val < 0:
            raise ValueError("must be non-negative")
        return val

    @field_validator("MASK_THRESHOLD", "DARKNESS_THRESHOLD")
    @classmethod
    def validate_unit_open(cls, val: float) -> float:
        """
        Thresholds live strictly inside the unit interval.
        """
        if not 0.0 < val < 1.0:
            raise ValueError("must be between 0.0 and 1.0 (exclusive)")
        return val

    @field_validator("EMA_BETA")
    @classmethod
    def validate_beta(cls, val: float) -> float:
        """
        EMA coefficient must be in [0, 1).
        """
        if not 0.0 <= val < 1.0:
            raise ValueError("must be in [0.0, 1.0)")
        return val

    @field_validator("WORKER_THREADS")
    @classmethod
    def validate_threads(cls, val: int) -> int:
        """
        Worker count cannot be negative.
        """
        if val < 0:
            raise ValueError("must be >= 0")
        return val

    @property
    def worker_threads(self) -> int:
        """
        Resolved worker pool size.
        """
        if self.WORKER_THREADS:
            return self.WORKER_THREADS
        return psutil.cpu_count(logical=True) or 1


settings = Settings()
