"""Flags shared by several subcommands."""

from pathlib import Path
from typing import Annotated, Optional

import typer

from core.constants import HarmonizationMethod, Split


def _open_unit(value: Optional[float]) -> Optional[float]:
    if value is not None and not 0.0 < value < 1.0:
        raise typer.BadParameter(f"{value} is not in (0, 1)")
    return value


def _half_open_unit(value: Optional[float]) -> Optional[float]:
    if value is not None and not 0.0 <= value < 1.0:
        raise typer.BadParameter(f"{value} is not in [0, 1)")
    return value


ThreadsOption = Annotated[
    int,
    typer.Option(
        "--threads", min=0, help="Worker pool cap; 0 uses one worker per logical core"
    ),
]
SeedOption = Annotated[
    Optional[int], typer.Option("--seed", help="Seed for all randomness [default: 0]")
]
EpsOption = Annotated[
    Optional[float],
    typer.Option(
        "--eps", min=0.0, help="Ridge added to the source covariance [default: 1e-6]"
    ),
]
ThresholdOption = Annotated[
    Optional[float],
    typer.Option(
        "--threshold",
        callback=_open_unit,
        help="Mask binarization threshold in (0, 1) [default: 0.5]",
    ),
]
BetaOption = Annotated[
    Optional[float],
    typer.Option(
        "--beta",
        callback=_half_open_unit,
        help="Weight of the previous frame in [0, 1) [default: 0.8]",
    ),
]
DatasetOption = Annotated[
    Path,
    typer.Option(
        "--dataset", exists=True, file_okay=False, help="Dataset root directory"
    ),
]
SplitOption = Annotated[
    Split, typer.Option("--split", help="Restrict to items with this split tag")
]
MethodOption = Annotated[
    HarmonizationMethod, typer.Option("--method", help="How filters are obtained")
]
ModelOption = Annotated[
    Optional[Path],
    typer.Option("--model", dir_okay=False, help="Predictor model file"),
]
