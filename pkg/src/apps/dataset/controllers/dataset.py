"""Commands: evaluate, bias-probe, bench."""

import logging
from pathlib import Path
from typing import Annotated, Optional

import typer
from rich.table import Table
from typer import Typer

from apps.dataset.constants import DatasetMessage
from apps.dataset.services import (
    bench,
    bias_probe,
    evaluate,
    parse_sizes,
    scan_dataset,
    write_probe_csv,
)
from apps.predictor.schemas import PredictorModel
from apps.predictor.services import load_model
from config import settings
from core.constants import HarmonizationMethod, Split
from core.utils import ColoredOutput, console
from core.utils.options import (
    DatasetOption,
    EpsOption,
    MethodOption,
    ModelOption,
    SeedOption,
    SplitOption,
    ThreadsOption,
    ThresholdOption,
)

router = Typer()

logger = logging.getLogger(__name__)


def _maybe_model(path: Optional[Path]) -> Optional[PredictorModel]:
    return load_model(path) if path is not None else None


@router.command("evaluate", help="Harmonize and score every item of a dataset")
def evaluate_command(
    dataset: DatasetOption,
    method: MethodOption,
    output: Annotated[
        Path, typer.Option("--output", help="Directory for the CSV and images")
    ],
    model: ModelOption = None,
    split: SplitOption = Split.ALL,
    eps: EpsOption = None,
    threshold: ThresholdOption = None,
    threads: ThreadsOption = 0,
) -> None:
    """
    Write ``evaluation.csv`` and one harmonized PNG per item under ``output``.
    """
    frame = evaluate(
        scan_dataset(dataset, split),
        method,
        eps,
        output,
        _maybe_model(model),
        threshold,
        threads,
    )
    failed = int((frame["error"].fillna("") != "").sum()) if len(frame) else 0
    if failed:
        console.print(ColoredOutput.warning(f"{failed} item(s) failed; see the error column"))
    console.print(ColoredOutput.success(f"{DatasetMessage.EVALUATION_DONE}: {output}"))


@router.command("bias-probe", help="Measure filter drift under leaky masks")
def bias_probe_command(
    dataset: DatasetOption,
    output: Annotated[Path, typer.Option("--output", help="CSV path")],
    radius: Annotated[
        int, typer.Option("--radius", min=1, help="Mask dilation radius in pixels")
    ] = 2,
    method: MethodOption = HarmonizationMethod.IDEAL,
    model: ModelOption = None,
    split: SplitOption = Split.ALL,
    eps: EpsOption = None,
    threshold: ThresholdOption = None,
    threads: ThreadsOption = 0,
) -> None:
    """
    Compare filters fitted through the exact mask with filters fitted through
    the dilated mask.
    """
    report = bias_probe(
        scan_dataset(dataset, split),
        method,
        radius,
        eps,
        _maybe_model(model),
        threshold,
        threads,
    )
    write_probe_csv(report, output)
    console.print(
        ColoredOutput.info(
            f"Mean parameter drift {report.mean_param_l1}, "
            f"mean fMSE change {report.mean_fmse_delta}"
        )
    )
    console.print(ColoredOutput.success(f"{DatasetMessage.PROBE_DONE}: {output}"))


@router.command("bench", help="Time statistics, fit and apply across resolutions")
def bench_command(
    sizes: Annotated[
        Optional[str],
        typer.Option(
            "--sizes", help="Comma-separated WIDTHxHEIGHT list [default: 256x256..4096x4096]"
        ),
    ] = None,
    repetitions: Annotated[int, typer.Option("--repetitions", min=1)] = 5,
    parallel: Annotated[
        bool, typer.Option("--parallel", help="Use the worker pool for application")
    ] = False,
    threads: ThreadsOption = 0,
    seed: SeedOption = None,
    eps: EpsOption = None,
    output: Annotated[
        Optional[Path],
        typer.Option("--output", help="CSV path [default: standard output]"),
    ] = None,
) -> None:
    """
    Report median, min and max iterations per second for each size.
    """
    frame = bench(
        parse_sizes(sizes) if sizes else None,
        repetitions,
        parallel,
        threads,
        settings.SEED if seed is None else seed,
        eps,
    )
    table = Table(title="Throughput (it/s)")
    for column in frame.columns:
        table.add_column(column)
    for row in frame.itertuples(index=False):
        table.add_row(row[0], *(f"{value:.2f}" for value in row[1:]))
    console.print(table)

    if output is None:
        typer.echo(frame.to_csv(index=False), nl=False)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(output, index=False)
    console.print(ColoredOutput.success(f"{DatasetMessage.BENCH_DONE}: {output}"))
