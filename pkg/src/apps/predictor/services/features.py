import numpy as np

from apps.imaging.schemas import ColorStats
from apps.imaging.services import masked_stats
from apps.oracle.schemas import CompositeTriplet
from apps.predictor.schemas import FeatureVector
from constants.config import HISTOGRAM_BINS

_UPPER = np.triu_indices(3)


def _stats_part(stats: ColorStats) -> np.ndarray:
    return np.concatenate([stats.mean, stats.cov[_UPPER]])


def channel_histograms(pixels: np.ndarray) -> np.ndarray:
    """Per-channel normalized histograms of (N, 3) values over [0, 1].

    Each channel's bins sum to 1; the value 1.0 falls in the last bin.
    """
    bins = np.clip((pixels * HISTOGRAM_BINS).astype(np.int64), 0, HISTOGRAM_BINS - 1)
    hist = np.stack(
        [np.bincount(bins[:, c], minlength=HISTOGRAM_BINS) for c in range(3)]
    ).astype(np.float64)
    return (hist / pixels.shape[0]).reshape(-1)


def extract_features(t: CompositeTriplet) -> FeatureVector:
    """Order-invariant 67-value description of (composite, mask).

    Raises:
        MaskTooSmall: If foreground or background has fewer than 16 pixels
    """
    fg_stats = masked_stats(t.composite, t.mask)
    bg_stats = masked_stats(t.composite, t.mask, invert=True)
    fg = t.composite.pixels[t.mask.bits]
    bg = t.composite.pixels[~t.mask.bits]
    values = np.concatenate(
        [
            _stats_part(fg_stats),
            _stats_part(bg_stats),
            channel_histograms(fg),
            channel_histograms(bg),
            [t.mask.area_fraction],
        ]
    )
    return FeatureVector(values=values)
