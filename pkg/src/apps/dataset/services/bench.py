"""Throughput of the statistics + fit + apply pipeline across resolutions."""

import logging
import time
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import psutil

from apps.dataset.constants import BENCH_COLUMNS, DatasetErrorMessage
from apps.dataset.exceptions import InvalidBenchConfig
from apps.imaging.schemas import ColorStats, Image, Mask
from apps.imaging.services import masked_stats
from apps.transport.services import apply_filter, fit_mkl
from constants.config import DEFAULT_BENCH_SIZES
from core.utils import resolve_workers
from core.utils.logging_config import log_performance_metric

logger = logging.getLogger(__name__)

Size = Tuple[int, int]


def parse_sizes(text: str) -> List[Size]:
    """Parse ``"256x256,512x512"`` into [(width, height), ...].

    Raises:
        InvalidBenchConfig: On malformed or non-positive sizes
    """
    sizes: List[Size] = []
    for token in text.split(","):
        parts = token.strip().lower().split("x")
        try:
            width, height = (int(part) for part in parts)
        except ValueError as err:
            raise InvalidBenchConfig(f"{InvalidBenchConfig.message}: {token!r}") from err
        if width < 1 or height < 1:
            raise InvalidBenchConfig(f"{InvalidBenchConfig.message}: {token!r}")
        sizes.append((width, height))
    if not sizes:
        raise InvalidBenchConfig()
    return sizes


def bench_scene(size: Size, rng: np.random.Generator) -> Tuple[Image, Mask, ColorStats]:
    """Random image, a centered rectangular mask and a random target."""
    width, height = size
    pixels = rng.uniform(0.2, 0.8, size=(height, width, 3))
    bits = np.zeros((height, width), dtype=bool)
    bits[height // 4 : height - height // 4, width // 4 : width - width // 4] = True
    if np.count_nonzero(bits) < 16:
        bits[:] = True
    target_pixels = rng.uniform(0.1, 0.9, size=(256, 3))
    centered = target_pixels - target_pixels.mean(axis=0)
    target = ColorStats(
        mean=target_pixels.mean(axis=0),
        cov=centered.T @ centered / target_pixels.shape[0],
        count=target_pixels.shape[0],
    )
    return Image.trusted(pixels), Mask.trusted(bits), target


def bench(
    sizes: Optional[Sequence[Size]] = None,
    repetitions: int = 5,
    parallel: bool = False,
    threads: Optional[int] = None,
    seed: int = 0,
    eps: Optional[float] = None,
) -> pd.DataFrame:
    """Iterations per second of masked statistics + ``fit_mkl`` + ``apply_filter``.

    Decode and encode are excluded. One untimed warm-up precedes the timed
    repetitions.

    Args:
        sizes: (width, height) pairs, defaults to 256x256 up to 4096x4096
        repetitions: Timed runs per size
        parallel: Use the worker pool for filter application
        threads: Pool size when parallel
        seed: Scene seed
        eps: Ridge for the fit

    Returns:
        One row per size: size, median, min and max iterations per second

    Raises:
        InvalidBenchConfig: On empty sizes or repetitions < 1
    """
    sizes = list(DEFAULT_BENCH_SIZES if sizes is None else sizes)
    if not sizes:
        raise InvalidBenchConfig()
    if repetitions < 1:
        raise InvalidBenchConfig(DatasetErrorMessage.INVALID_REPETITIONS)
    workers = resolve_workers(threads) if parallel else 1
    process = psutil.Process()
    rng = np.random.default_rng(seed)

    rows = []
    for size in sizes:
        img, mask, target = bench_scene(size, rng)

        def iteration() -> None:
            f = fit_mkl(masked_stats(img, mask), target, eps)
            apply_filter(img, mask, f, workers)

        iteration()
        rates = []
        for _ in range(repetitions):
            start = time.perf_counter()
            iteration()
            rates.append(1.0 / max(time.perf_counter() - start, 1e-12))

        label = f"{size[0]}x{size[1]}"
        row = {
            "size": label,
            "iters_per_sec_median": float(np.median(rates)),
            "iters_per_sec_min": float(np.min(rates)),
            "iters_per_sec_max": float(np.max(rates)),
        }
        rows.append(row)
        log_performance_metric(
            logger,
            "bench_iters_per_sec",
            row["iters_per_sec_median"],
            "it/s",
            {
                "size": label,
                "workers": workers,
                "rss_mb": round(process.memory_info().rss / 2**20, 1),
            },
        )
        del img, mask
    return pd.DataFrame(rows, columns=BENCH_COLUMNS)
