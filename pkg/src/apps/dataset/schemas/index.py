from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from apps.dataset.constants import DatasetErrorMessage
from core.constants import Split


class DatasetEntry(BaseModel):
    """One (composite, mask, real) triple on disk."""

    name: str = Field(..., description="File stem shared by the triple")
    composite_path: Path
    mask_path: Path
    real_path: Optional[Path] = Field(None, description="Missing reals are allowed")
    split: Split = Field(Split.ALL)

    model_config = {"frozen": True}

    @property
    def has_real(self) -> bool:
        return self.real_path is not None


class DatasetIndex(BaseModel):
    """Entries of a dataset root, sorted by name."""

    root: Path
    entries: List[DatasetEntry] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_names(self) -> "DatasetIndex":
        """
        Names are unique.
        """
        names = [entry.name for entry in self.entries]
        if len(names) != len(set(names)):
            raise ValueError(DatasetErrorMessage.DUPLICATE_NAME)
        return self

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def names(self) -> List[str]:
        return [entry.name for entry in self.entries]
