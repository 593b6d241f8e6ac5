"""Hybrid objective: labels term on the 12 outputs plus an L1 content term on the
harmonized foreground."""

from typing import Optional, Tuple

import numpy as np
from pydantic import Field

from apps.imaging.schemas import ColorStats
from apps.imaging.services import masked_stats
from apps.oracle.schemas import CompositeTriplet
from apps.predictor.constants import STATS_JACOBIAN_STEP
from apps.predictor.schemas import LossBreakdown
from apps.transport.schemas import MklFilter
from apps.transport.services import fit_mkl
from config import settings
from core.constants import LossNorm, Parameterization
from core.linalg3 import project_psd
from core.utils import DomainModel


class LossContext(DomainModel):
    """Everything the objective needs about one training item."""

    name: str = Field("", description="Dataset stem")
    features: np.ndarray = Field(..., description="Raw features, (67,)")
    labels: np.ndarray = Field(..., description="Regression target, (12,)")
    pixels: np.ndarray = Field(..., description="Composite foreground colors, (k, 3)")
    reference: np.ndarray = Field(..., description="Real foreground colors, (k, 3)")
    fg: ColorStats = Field(..., description="Composite foreground statistics")


def identity_output(parameterization: Parameterization) -> np.ndarray:
    """Output vector that decodes to the identity filter."""
    if parameterization == Parameterization.STATS:
        return np.zeros(12)
    return MklFilter.identity().params


def output_to_filter(
    output: np.ndarray,
    parameterization: Parameterization,
    fg: Optional[ColorStats] = None,
    eps: Optional[float] = None,
) -> MklFilter:
    """Decode 12 network outputs into a filter.

    FILTER: the outputs are [a row-major, s]. STATS: they are residuals of the
    target covariance (9, symmetrized and projected to PSD) and mean (3) over the
    composite foreground statistics ``fg``; the filter is the MKL fit between them.
    """
    if parameterization == Parameterization.FILTER:
        return MklFilter.from_params(output)
    cov = project_psd(fg.cov + output[:9].reshape(3, 3))
    target = ColorStats(mean=fg.mean + output[9:], cov=cov, count=fg.count)
    return fit_mkl(fg, target, eps)


def stats_labels(fg: ColorStats, real_fg: ColorStats) -> np.ndarray:
    """Residual target for the STATS parameterization."""
    return np.concatenate([(real_fg.cov - fg.cov).reshape(-1), real_fg.mean - fg.mean])


def labels_term(
    output: np.ndarray, labels: np.ndarray, norm: LossNorm
) -> Tuple[float, np.ndarray]:
    """Mean absolute (L1) or squared (L2) deviation over the 12 values, and its
    gradient."""
    residual = output - labels
    if norm == LossNorm.L2:
        return float(np.mean(residual * residual)), 2.0 * residual / residual.size
    return float(np.mean(np.abs(residual))), np.sign(residual) / residual.size


def content_term(
    f: MklFilter, pixels: np.ndarray, reference: np.ndarray
) -> Tuple[float, np.ndarray]:
    """Mean absolute per-pixel, per-channel error of ``a @ x + s`` against the
    reference colors, and its gradient w.r.t. the 12 filter parameters."""
    diff = f.map_points(pixels) - reference
    value = float(np.mean(np.abs(diff)))
    g = np.sign(diff) / diff.size
    return value, np.concatenate([(g.T @ pixels).reshape(-1), g.sum(axis=0)])


def _stats_jacobian(
    output: np.ndarray, base: MklFilter, fg: ColorStats, eps: Optional[float]
) -> np.ndarray:
    """Forward-difference Jacobian d filter params / d outputs, (12, 12)."""
    base_params = base.params
    jac = np.empty((12, 12))
    for j in range(12):
        bumped = output.copy()
        bumped[j] += STATS_JACOBIAN_STEP
        shifted = output_to_filter(bumped, Parameterization.STATS, fg, eps)
        jac[:, j] = (shifted.params - base_params) / STATS_JACOBIAN_STEP
    return jac


def item_loss(
    output: np.ndarray,
    ctx: LossContext,
    alpha: float,
    norm: LossNorm,
    parameterization: Parameterization = Parameterization.FILTER,
    eps: Optional[float] = None,
    with_grad: bool = True,
) -> Tuple[LossBreakdown, Optional[np.ndarray]]:
    """Loss of one item and, when requested, its gradient w.r.t. the outputs."""
    labels, g_labels = labels_term(output, ctx.labels, norm)
    f = output_to_filter(output, parameterization, ctx.fg, eps)
    content, g_filter = content_term(f, ctx.pixels, ctx.reference)
    breakdown = LossBreakdown.combine(labels, content, alpha)
    if not with_grad:
        return breakdown, None

    if parameterization == Parameterization.STATS and alpha != 0.0:
        g_filter = _stats_jacobian(output, f, ctx.fg, eps).T @ g_filter
    return breakdown, g_labels + alpha * g_filter


def loss(
    output: np.ndarray,
    target: MklFilter,
    t: CompositeTriplet,
    alpha: Optional[float] = None,
    norm: LossNorm = LossNorm.L1,
) -> LossBreakdown:
    """Hybrid loss of a 12-parameter prediction against the ideal filter.

    labels: deviation of the outputs from ``target``'s [a, s]. content: mean
    absolute error of the predicted filter on the composite foreground against the
    real foreground. total = labels + alpha * content.

    Args:
        output: Predicted [a row-major, s]
        target: Ideal filter for the triplet
        t: Triplet with ground truth
        alpha: Content weight, defaults to settings
        norm: Labels norm

    Returns:
        LossBreakdown

    Raises:
        MissingGroundTruth: If the triplet has no real image
    """
    real = t.require_real()
    alpha = settings.CONTENT_ALPHA if alpha is None else alpha
    output = np.asarray(output, dtype=np.float64).reshape(-1)
    ctx = LossContext(
        name=t.name,
        features=np.zeros(0),
        labels=target.params,
        pixels=t.composite.pixels[t.mask.bits],
        reference=real.pixels[t.mask.bits],
        fg=masked_stats(t.composite, t.mask),
    )
    breakdown, _ = item_loss(output, ctx, alpha, norm, with_grad=False)
    return breakdown
