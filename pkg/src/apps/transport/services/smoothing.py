from typing import List, Optional, Sequence

from apps.transport.constants import TransportErrorMessage
from apps.transport.exceptions import InvalidBeta
from apps.transport.schemas import MklFilter
from config import settings
from core.exceptions import DataError


def _resolve_beta(beta: Optional[float]) -> float:
    beta = settings.EMA_BETA if beta is None else beta
    if not 0.0 <= beta < 1.0:
        raise InvalidBeta(f"{InvalidBeta.message}: {beta}")
    return beta


def ema_smooth(
    prev: MklFilter, current: MklFilter, beta: Optional[float] = None
) -> MklFilter:
    """Exponential moving average of all 12 parameters:
    ``beta * prev + (1 - beta) * current``."""
    beta = _resolve_beta(beta)
    return MklFilter(
        a=beta * prev.a + (1.0 - beta) * current.a,
        s=beta * prev.s + (1.0 - beta) * current.s,
    )


def smooth_sequence(
    filters: Sequence[MklFilter], beta: Optional[float] = None
) -> List[MklFilter]:
    """Run the EMA over per-frame filters; the first frame passes through."""
    if not filters:
        raise DataError(TransportErrorMessage.EMPTY_SEQUENCE)
    beta = _resolve_beta(beta)
    smoothed = [filters[0]]
    for current in filters[1:]:
        smoothed.append(ema_smooth(smoothed[-1], current, beta))
    return smoothed
