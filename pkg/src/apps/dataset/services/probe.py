"""Exposure-bias probe: how far a filter drifts when the mask leaks background."""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from apps.dataset.constants import BIAS_PROBE_COLUMNS
from apps.dataset.exceptions import InvalidProbeMethod, MissingModel
from apps.dataset.schemas import (
    BiasProbeReport,
    BiasProbeRow,
    DatasetEntry,
    DatasetIndex,
)
from apps.dataset.services.evaluation import (
    aggregate_rows,
    filter_for,
    write_report_csv,
)
from apps.dataset.services.index import load_triplet
from apps.diagnostics.services import compute_metrics
from apps.imaging.exceptions import InvalidRadius
from apps.imaging.services import dilate_mask
from apps.oracle.schemas import CompositeTriplet
from apps.predictor.schemas import PredictorModel
from apps.transport.services import apply_filter
from core.constants import HarmonizationMethod
from core.exceptions import as_data_error
from core.utils import ordered_map
from core.utils.logging_config import log_error_with_context

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
TripletSource = Union[CompositeTriplet, DatasetEntry]

_PROBE_METHODS = (HarmonizationMethod.IDEAL, HarmonizationMethod.PREDICTOR)


def probe_item(
    t: CompositeTriplet,
    method: HarmonizationMethod,
    radius: int,
    eps: Optional[float] = None,
    model: Optional[PredictorModel] = None,
) -> BiasProbeRow:
    """Compare the filter from the pixel-perfect mask with the one from the mask
    dilated by ``radius``; both are scored under the original mask."""
    real = t.require_real()
    perfect = filter_for(t, method, eps, model)
    leaky_triplet = t.model_copy(update={"mask": dilate_mask(t.mask, radius)})
    leaky = filter_for(leaky_triplet, method, eps, model)

    fmse_perfect = compute_metrics(apply_filter(t.composite, t.mask, perfect), real, t.mask)
    fmse_leaky = compute_metrics(apply_filter(t.composite, t.mask, leaky), real, t.mask)
    return BiasProbeRow(
        name=t.name,
        radius=radius,
        param_l1=float(np.mean(np.abs(perfect.params - leaky.params))),
        fmse_delta=fmse_leaky.fmse - fmse_perfect.fmse,
    )


def bias_probe(
    index: Union[DatasetIndex, Sequence[CompositeTriplet]],
    method: HarmonizationMethod,
    radius: int,
    eps: Optional[float] = None,
    model: Optional[PredictorModel] = None,
    threshold: Optional[float] = None,
    workers: Optional[int] = None,
) -> BiasProbeReport:
    """Run the probe over a dataset.

    Args:
        index: Scanned dataset, or triplets already in memory
        method: ideal or predictor
        radius: Dilation radius, at least 1
        eps: Ridge for MKL fits
        model: Predictor model for the predictor method
        threshold: Mask binarization threshold
        workers: Worker pool size

    Returns:
        Per-item rows in dataset order and their means over items without error

    Raises:
        InvalidRadius: If radius < 1
        InvalidProbeMethod: If the method is not ideal or predictor
        MissingModel: If the predictor method is chosen without a model
    """
    if radius < 1:
        raise InvalidRadius(f"Bias probe radius must be >= 1, got {radius}")
    if method not in _PROBE_METHODS:
        raise InvalidProbeMethod(f"{InvalidProbeMethod.message}: {method}")
    if method == HarmonizationMethod.PREDICTOR and model is None:
        raise MissingModel()

    items: List[TripletSource] = (
        index.entries if isinstance(index, DatasetIndex) else list(index)
    )

    def _run(item: TripletSource) -> BiasProbeRow:
        try:
            t = load_triplet(item, threshold) if isinstance(item, DatasetEntry) else item
            return probe_item(t, method, radius, eps, model)
        except Exception as exc:
            err = as_data_error(exc)
            log_error_with_context(logger, err, item=item.name, level="WARNING")
            return BiasProbeRow(
                name=item.name, radius=radius, error=f"{type(err).__name__}: {err.message}"
            )

    rows = ordered_map(_run, items, workers)
    good = [row for row in rows if not row.error]
    report = BiasProbeReport(
        method=method,
        radius=radius,
        rows=rows,
        mean_param_l1=float(np.mean([r.param_l1 for r in good])) if good else None,
        mean_fmse_delta=float(np.mean([r.fmse_delta for r in good])) if good else None,
    )
    logger.info(
        f"Bias probe finished - Method: {method}, Radius: {radius}, "
        f"Items: {len(rows)}, Mean L1: {report.mean_param_l1}"
    )
    return report


def probe_frame(report: BiasProbeReport) -> pd.DataFrame:
    """Rows of a probe report plus ``mean`` and ``sem`` rows."""
    frame = pd.DataFrame(
        [row.model_dump() for row in report.rows], columns=BIAS_PROBE_COLUMNS
    )
    if frame.empty:
        return frame
    return pd.concat([frame, aggregate_rows(frame, "radius")], ignore_index=True)


def write_probe_csv(report: BiasProbeReport, path: PathLike) -> Path:
    return write_report_csv(probe_frame(report), path)
