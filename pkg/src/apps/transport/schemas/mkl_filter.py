from typing import Any, Dict

import numpy as np
from numpy.typing import ArrayLike
from pydantic import Field, field_validator

from apps.transport.constants import TransportErrorMessage
from constants.config import FILTER_PARAMS
from core.exceptions import DataError
from core.linalg3 import as_mat3, as_vec3
from core.utils import DomainModel


class MklFilter(DomainModel):
    """
    Affine color map ``x -> a @ x + s``.

    Parameter order for every flat encoding is the nine entries of ``a`` row-major,
    then the three entries of ``s``.
    """

    a: np.ndarray = Field(..., description="Linear part, (3, 3)")
    s: np.ndarray = Field(..., description="Shift, (3,)")

    @field_validator("a", mode="before")
    @classmethod
    def validate_a(cls, value: Any) -> np.ndarray:
        """
        Validate the linear part.
        """
        return as_mat3(value).copy()

    @field_validator("s", mode="before")
    @classmethod
    def validate_s(cls, value: Any) -> np.ndarray:
        """
        Validate the shift.
        """
        return as_vec3(value).copy()

    @classmethod
    def identity(cls) -> "MklFilter":
        return cls(a=np.eye(3), s=np.zeros(3))

    @classmethod
    def from_params(cls, params: ArrayLike) -> "MklFilter":
        """Build a filter from its 12 flat parameters.

        Raises:
            DataError: If there are not exactly 12 values
        """
        flat = np.asarray(params, dtype=np.float64).reshape(-1)
        if flat.size != FILTER_PARAMS:
            raise DataError(f"{TransportErrorMessage.WRONG_ARITY}, got {flat.size}")
        return cls(a=flat[:9].reshape(3, 3), s=flat[9:])

    @property
    def params(self) -> np.ndarray:
        """Flat 12-vector [a row-major, s]."""
        return np.concatenate([self.a.reshape(-1), self.s])

    def map_points(self, points: np.ndarray) -> np.ndarray:
        """Unclipped image of an (..., 3) color array."""
        return points @ self.a.T + self.s

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": [float(v) for v in self.a.reshape(-1)],
            "s": [float(v) for v in self.s],
        }
