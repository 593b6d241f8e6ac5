from pydantic import BaseModel, ConfigDict


class DomainModel(BaseModel):
    """
    Base model for immutable domain values that carry numpy arrays.

    Arrays are validated by the subclasses' field validators and never copied by
    pydantic, so models built in the per-pixel hot path stay cheap.
    """

    model_config = ConfigDict(
        arbitrary_types_allowed=True, frozen=True, populate_by_name=True
    )


class ReportModel(BaseModel):
    """
    Base model for plain-number reports that serialize to JSON and CSV rows.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)
