from pydantic import Field, computed_field

from apps.diagnostics.constants import CLIP_REGIME_EXCURSION
from core.utils import ReportModel


class MetricReport(ReportModel):
    """Harmonization error on the 0-255 scale."""

    mse: float = Field(..., ge=0.0, description="Mean squared error over all pixels")
    psnr: float = Field(..., description="Peak signal-to-noise ratio, dB")
    fmse: float = Field(..., ge=0.0, description="Mean squared error over foreground")
    psnr_capped: bool = Field(False, description="PSNR hit the finite cap")
    pixel_count: int = Field(..., ge=0, description="Pixels in the MSE")
    foreground_count: int = Field(..., ge=0, description="Pixels in the fMSE")


class BoundReport(ReportModel):
    """Terms of the clipped-linear-map error bound for one filter and source."""

    bias_b: float = Field(..., ge=0.0, description="Mean mismatch at the source mean")
    a_op_norm: float = Field(..., ge=0.0, description="Operator norm of the filter")
    trace_sigma0: float = Field(..., description="Trace of the source covariance")
    e_clip_emp: float = Field(..., ge=0.0, description="Empirical clipping error")
    e_clip_bound: float = Field(..., ge=0.0, description="3 x outside fraction")
    outside_fraction: float = Field(..., ge=0.0, le=1.0)
    e_lin_emp: float = Field(..., ge=0.0, description="Empirical unclipped error")
    e_lin_bound: float = Field(..., ge=0.0, description="Linear-part error bound")
    total_bound: float = Field(..., ge=0.0, description="2 e_clip_bound + 2 e_lin_bound")
    measured_error: float = Field(..., ge=0.0, description="Mean clipped error")
    lipschitz_l: float = Field(..., ge=0.0, description="Lipschitz constant used")
    max_excursion: float = Field(
        0.0, ge=0.0, description="Largest per-coordinate distance outside the cube"
    )
    sample_count: int = Field(..., ge=1)

    @computed_field
    @property
    def clip_regime(self) -> bool:
        """Every mapped coordinate lies in [-1, 2], where the clip term is a bound."""
        return self.max_excursion <= CLIP_REGIME_EXCURSION

    @computed_field
    @property
    def holds(self) -> bool:
        return self.measured_error <= self.total_bound + 1e-9
