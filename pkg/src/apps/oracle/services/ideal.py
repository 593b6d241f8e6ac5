import logging
from typing import Optional

import numpy as np

from apps.imaging.services import masked_stats
from apps.oracle.schemas import CompositeTriplet
from apps.transport.schemas import MklFilter
from apps.transport.services import fit_mkl

logger = logging.getLogger(__name__)

# Channel standard deviations at or below this count as constant
_ZERO_STD = 1e-12


def fit_ideal(t: CompositeTriplet, eps: Optional[float] = None) -> MklFilter:
    """Exact MKL transform from the composite foreground to the real foreground.

    A ceiling for any predictor: it looks at the ground truth.

    Raises:
        MissingGroundTruth: If the triplet has no real image
        MaskTooSmall: If the foreground has fewer than 16 pixels
    """
    real = t.require_real()
    src = masked_stats(t.composite, t.mask)
    dst = masked_stats(real, t.mask)
    return fit_mkl(src, dst, eps)


def reinhard_ct(t: CompositeTriplet) -> MklFilter:
    """Per-channel mean/std transfer from the composite background onto its
    foreground, in RGB.

    A channel whose foreground is constant keeps gain 1 and only has its mean
    shifted.

    Raises:
        MaskTooSmall: If foreground or background has fewer than 16 pixels
    """
    fg = masked_stats(t.composite, t.mask)
    bg = masked_stats(t.composite, t.mask, invert=True)
    fg_std = np.sqrt(np.maximum(np.diag(fg.cov), 0.0))
    bg_std = np.sqrt(np.maximum(np.diag(bg.cov), 0.0))

    flat = fg_std <= _ZERO_STD
    gain = np.where(flat, 1.0, bg_std / np.where(flat, 1.0, fg_std))
    return MklFilter(a=np.diag(gain), s=bg.mean - gain * fg.mean)


def clean_triplet(t: CompositeTriplet) -> CompositeTriplet:
    """Replace every background pixel of the composite with the real pixel.

    Raises:
        MissingGroundTruth: If the triplet has no real image
    """
    real = t.require_real()
    pixels = np.where(t.mask.bits[:, :, None], t.composite.pixels, real.pixels)
    return t.model_copy(update={"composite": type(t.composite).trusted(pixels)})
