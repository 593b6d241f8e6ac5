from typing import Any, Dict, List

import numpy as np
from pydantic import Field, field_validator

from constants.config import PSD_TOLERANCE
from core.exceptions import NotPositiveSemidefinite
from core.linalg3 import as_sym3, as_vec3, eigh_sym3
from core.utils import DomainModel


class ColorStats(DomainModel):
    """Mean and population covariance of a pixel population."""

    mean: np.ndarray = Field(..., description="Mean color, shape (3,)")
    cov: np.ndarray = Field(..., description="Covariance, symmetric (3, 3)")
    count: int = Field(..., ge=1, description="Number of contributing pixels")

    @field_validator("mean", mode="before")
    @classmethod
    def validate_mean(cls, value: Any) -> np.ndarray:
        """
        Validate mean vector.
        """
        return as_vec3(value)

    @field_validator("cov", mode="before")
    @classmethod
    def validate_cov(cls, value: Any) -> np.ndarray:
        """
        Symmetrize the covariance and check it is PSD within tolerance.
        """
        cov = as_sym3(value)
        values, _ = eigh_sym3(cov)
        if values[-1] < -PSD_TOLERANCE:
            raise NotPositiveSemidefinite(
                f"Covariance is not positive semidefinite: "
                f"smallest eigenvalue {values[-1]:.3e}"
            )
        return cov

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready mapping (mean, row-major cov, count)."""
        return {
            "mean": [float(v) for v in self.mean],
            "cov": [float(v) for v in self.cov.reshape(-1)],
            "count": self.count,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ColorStats":
        cov: List[float] = data["cov"]
        return cls(
            mean=data["mean"],
            cov=np.asarray(cov, dtype=np.float64).reshape(3, 3),
            count=int(data.get("count", 1)),
        )
