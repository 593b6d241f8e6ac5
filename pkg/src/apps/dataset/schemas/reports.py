from typing import List, Optional

from pydantic import Field

from core.constants import HarmonizationMethod
from core.utils import ReportModel


class BiasProbeRow(ReportModel):
    """Filter drift for one item between its mask and the dilated mask."""

    name: str
    radius: int = Field(..., ge=1)
    param_l1: Optional[float] = Field(None, ge=0.0, description="Mean |dp| over 12")
    fmse_delta: Optional[float] = Field(
        None, description="fMSE(dilated filter) - fMSE(perfect filter)"
    )
    error: str = ""


class BiasProbeReport(ReportModel):
    """Per-item and mean exposure-bias distances."""

    method: HarmonizationMethod
    radius: int = Field(..., ge=1)
    rows: List[BiasProbeRow] = Field(default_factory=list)
    mean_param_l1: Optional[float] = Field(None, ge=0.0)
    mean_fmse_delta: Optional[float] = None
