import logging
import math
from typing import Optional

import numpy as np

from apps.imaging.schemas import ColorStats, Image, Mask
from apps.imaging.services import check_shapes
from apps.diagnostics.schemas import MetricReport
from config import settings
from constants.config import PIXEL_SCALE, PSNR_CAP_DB, PSNR_CAP_MSE_RATIO

logger = logging.getLogger(__name__)


def psnr_from_mse(mse: float) -> float:
    """PSNR in dB on the 0-255 scale, capped for near-identical images."""
    if mse < PIXEL_SCALE**2 * PSNR_CAP_MSE_RATIO:
        return PSNR_CAP_DB
    return 10.0 * math.log10(PIXEL_SCALE**2 / mse)


def compute_metrics(result: Image, real: Image, mask: Mask) -> MetricReport:
    """MSE and PSNR over all pixels, fMSE over the foreground, all on 0-255.

    Raises:
        ShapeMismatch: If dimensions differ
    """
    check_shapes(result, real, mask)
    delta = (result.pixels - real.pixels) * PIXEL_SCALE
    squared = np.sum(delta * delta, axis=2)

    mse = float(np.mean(squared) / 3.0)
    fg = mask.count
    fmse = float(np.mean(squared[mask.bits]) / 3.0) if fg else 0.0
    psnr = psnr_from_mse(mse)
    return MetricReport(
        mse=mse,
        psnr=psnr,
        fmse=fmse,
        psnr_capped=psnr == PSNR_CAP_DB,
        pixel_count=int(mask.bits.size),
        foreground_count=fg,
    )


def darkness_flag(stats: ColorStats, threshold: Optional[float] = None) -> bool:
    """True when the mean luminance (channel average of the mean) is below
    ``threshold``."""
    threshold = settings.DARKNESS_THRESHOLD if threshold is None else threshold
    return bool(float(np.mean(stats.mean)) < threshold)
