import logging
import math
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from apps.dataset.constants import (
    AGGREGATE_COMMENT,
    EVALUATION_COLUMNS,
    DatasetLayout,
)
from apps.dataset.exceptions import MissingModel
from apps.dataset.schemas import DatasetEntry, DatasetIndex
from apps.dataset.services.index import load_triplet
from apps.diagnostics.services import compute_metrics, darkness_flag
from apps.imaging.services import save_image, stats_from_pixels
from apps.oracle.schemas import CompositeTriplet
from apps.oracle.services import fit_ideal, reinhard_ct
from apps.predictor.schemas import PredictorModel
from apps.predictor.services import predict
from apps.transport.schemas import MklFilter
from apps.transport.services import apply_filter, filter_clip_fraction
from core.constants import HarmonizationMethod
from core.exceptions import as_data_error
from core.utils import ordered_map
from core.utils.logging_config import log_error_with_context

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
TripletSource = Union[CompositeTriplet, DatasetEntry]

# Columns averaged into the aggregate rows
METRIC_COLUMNS = ("mse", "psnr", "fmse", "clip_fraction", "param_l1", "fmse_delta")


def filter_for(
    t: CompositeTriplet,
    method: HarmonizationMethod,
    eps: Optional[float] = None,
    model: Optional[PredictorModel] = None,
) -> MklFilter:
    """Filter chosen by ``method`` for one triplet."""
    if method == HarmonizationMethod.IDEAL:
        return fit_ideal(t, eps)
    if method == HarmonizationMethod.CT:
        return reinhard_ct(t)
    if method == HarmonizationMethod.PREDICTOR:
        if model is None:
            raise MissingModel()
        return predict(model, t, eps)
    return MklFilter.identity()


def aggregate_rows(frame: pd.DataFrame, label_column: str = "method") -> pd.DataFrame:
    """``mean`` and ``sem`` rows over the items without error.

    The standard error uses the sample standard deviation (ddof 1) and is 0 for a
    single item.
    """
    ok = frame[frame["error"].fillna("") == ""]
    numeric = [column for column in frame.columns if column in METRIC_COLUMNS]
    count = len(ok)
    means, sems = {}, {}
    for column in numeric:
        values = ok[column].astype(float)
        means[column] = float(values.mean()) if count else math.nan
        sems[column] = float(values.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
    label = ""
    if label_column in frame.columns and len(frame):
        label = frame[label_column].iloc[0]
    rows = []
    for name, values in (("mean", means), ("sem", sems)):
        row = {column: "" for column in frame.columns}
        row.update(values)
        row["name"] = name
        if label_column in frame.columns:
            row[label_column] = label
        rows.append(row)
    return pd.DataFrame(rows, columns=frame.columns)


def write_report_csv(frame: pd.DataFrame, path: PathLike) -> Path:
    """Write a per-item table followed by its aggregate rows, after a comment line
    describing the averaging."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(AGGREGATE_COMMENT + "\n")
        frame.to_csv(handle, index=False)
    return path


class EvaluationService:
    """
    Harmonizes every item of a dataset with one method and scores it against the
    real image.

    Items run on a bounded worker pool; rows keep dataset order. Per-item failures
    are recorded in the ``error`` column and skipped.
    """

    def __init__(
        self,
        method: HarmonizationMethod,
        eps: Optional[float] = None,
        model: Optional[PredictorModel] = None,
        output_dir: Optional[PathLike] = None,
        threshold: Optional[float] = None,
        workers: Optional[int] = None,
    ) -> None:
        """
        Args:
            method: How filters are obtained
            eps: Ridge for MKL fits
            model: Predictor, required for the predictor method
            output_dir: Where harmonized PNGs go (skipped when None)
            threshold: Mask binarization threshold
            workers: Worker pool size
        """
        if method == HarmonizationMethod.PREDICTOR and model is None:
            raise MissingModel()
        self.method = method
        self.eps = eps
        self.model = model
        self.output_dir = Path(output_dir) if output_dir is not None else None
        self.threshold = threshold
        self.workers = workers

    def _resolve(self, item: TripletSource) -> CompositeTriplet:
        if isinstance(item, DatasetEntry):
            return load_triplet(item, self.threshold)
        return item

    def evaluate_item(self, item: TripletSource) -> dict:
        """Score one item; errors become a row with only name, method and error."""
        name = item.name
        row = {column: np.nan for column in EVALUATION_COLUMNS}
        row.update(name=name, method=str(self.method), dark_flag="", error="")
        try:
            t = self._resolve(item)
            real = t.require_real()
            f = filter_for(t, self.method, self.eps, self.model)
            result = apply_filter(t.composite, t.mask, f)
            report = compute_metrics(result, real, t.mask)

            foreground = t.composite.pixels[t.mask.bits]
            harmonized = stats_from_pixels(result.pixels[t.mask.bits], min_count=1)
            dark = darkness_flag(harmonized)
            if dark:
                logger.warning(f"Dark foreground - Item: {name}")
            row.update(
                mse=report.mse,
                psnr=report.psnr,
                fmse=report.fmse,
                clip_fraction=filter_clip_fraction(f, foreground),
                dark_flag=dark,
            )
            if self.output_dir is not None:
                save_image(result, self.output_dir / DatasetLayout.IMAGES / f"{name}.png")
        except Exception as exc:
            # Unreadable files and decoder failures stay per item
            err = as_data_error(exc)
            log_error_with_context(logger, err, item=name, level="WARNING")
            row["error"] = f"{type(err).__name__}: {err.message}"
        return row

    def run(self, items: Sequence[TripletSource]) -> pd.DataFrame:
        """Per-item rows, in input order, followed by ``mean`` and ``sem`` rows."""
        rows: List[dict] = ordered_map(self.evaluate_item, items, self.workers)
        frame = pd.DataFrame(rows, columns=EVALUATION_COLUMNS)
        failed = int((frame["error"] != "").sum())
        logger.info(
            f"Evaluation finished - Method: {self.method}, Items: {len(frame)}, "
            f"Failed: {failed}"
        )
        if frame.empty:
            return frame
        return pd.concat([frame, aggregate_rows(frame)], ignore_index=True)


def evaluate(
    index: Union[DatasetIndex, Sequence[CompositeTriplet]],
    method: HarmonizationMethod,
    eps: Optional[float] = None,
    output_dir: Optional[PathLike] = None,
    model: Optional[PredictorModel] = None,
    threshold: Optional[float] = None,
    workers: Optional[int] = None,
    csv_name: str = "evaluation.csv",
) -> pd.DataFrame:
    """Harmonize and score a dataset; write images and a CSV under ``output_dir``.

    Args:
        index: Scanned dataset, or triplets already in memory
        method: ideal, ct, predictor or identity
        eps: Ridge for MKL fits
        output_dir: Output directory; nothing is written when None
        model: Predictor model for the predictor method
        threshold: Mask binarization threshold
        workers: Worker pool size
        csv_name: File name of the CSV inside ``output_dir``

    Returns:
        The table written to the CSV

    Raises:
        MissingModel: If the predictor method is chosen without a model
    """
    items = index.entries if isinstance(index, DatasetIndex) else list(index)
    service = EvaluationService(method, eps, model, output_dir, threshold, workers)
    frame = service.run(items)
    if output_dir is not None:
        write_report_csv(frame, Path(output_dir) / csv_name)
    return frame

