import logging
from typing import Optional

import numpy as np

from apps.imaging.schemas import ColorStats
from apps.transport.schemas import MklFilter
from config import settings
from core.linalg3 import inv_sqrt_spd, sqrt_spd

logger = logging.getLogger(__name__)


def fit_mkl(src: ColorStats, dst: ColorStats, eps: Optional[float] = None) -> MklFilter:
    """Closed-form Monge-Kantorovich linear map between two Gaussian color models.

    ``a = S0^-1/2 (S0^1/2 S1 S0^1/2)^1/2 S0^-1/2`` with ``S0 = src.cov + eps I`` and
    ``S1 = dst.cov``; ``s = dst.mean - a @ src.mean``. The ridge touches only the
    source covariance, the one that is inverted.

    Args:
        src: Statistics of the colors to transform
        dst: Statistics to transport them onto
        eps: Ridge on the source covariance, defaults to settings

    Returns:
        Filter with symmetric PSD linear part

    Raises:
        SingularCovariance: If the ridged source covariance cannot be inverted
    """
    eps = settings.RIDGE_EPS if eps is None else eps
    ridged = src.cov + eps * np.eye(3)

    inv_root = inv_sqrt_spd(src.cov, eps)
    root = sqrt_spd(ridged)
    middle = sqrt_spd(root @ dst.cov @ root)

    a = inv_root @ middle @ inv_root
    a = 0.5 * (a + a.T)
    s = dst.mean - a @ src.mean
    return MklFilter(a=a, s=s)

