"""Commands: bound."""

import json
import logging
from pathlib import Path
from typing import Annotated, Optional

import numpy as np
import typer
from typer import Typer

from apps.diagnostics.constants import DiagnosticsMessage
from apps.diagnostics.services import error_bound_report, sample_source
from apps.imaging.schemas import ColorStats
from apps.imaging.services import stats_from_pixels
from apps.transport.services import load_filter
from config import settings
from core.exceptions import DataError
from core.utils import ColoredOutput, console
from core.utils.options import SeedOption

router = Typer()

logger = logging.getLogger(__name__)


def _read_stats(path: Path) -> ColorStats:
    """Parse a ``{"mean": [3], "cov": [9], "count": n}`` file."""
    try:
        return ColorStats.from_dict(json.loads(path.read_text(encoding="utf-8")))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise DataError(f"Malformed statistics file {path}: {exc}") from exc


@router.command("bound", help="Evaluate the clipped-filter error bound by sampling")
def bound_command(
    filter_path: Annotated[
        Path, typer.Option("--filter", exists=True, dir_okay=False, help="Filter file")
    ],
    stats: Annotated[
        Path,
        typer.Option(
            "--stats", exists=True, dir_okay=False, help="Source statistics JSON"
        ),
    ],
    true_map: Annotated[
        Path,
        typer.Option(
            "--true-map",
            exists=True,
            dir_okay=False,
            help="Affine reference map, as a filter file",
        ),
    ],
    samples: Annotated[
        int, typer.Option("--samples", min=1, help="Gaussian source draws")
    ] = 10000,
    lipschitz: Annotated[
        Optional[float],
        typer.Option(
            "--lipschitz",
            min=0.0,
            help="Lipschitz constant of the reference [default: its operator norm]",
        ),
    ] = None,
    seed: SeedOption = None,
    output: Annotated[
        Optional[Path],
        typer.Option("--output", help="Report JSON path [default: standard output]"),
    ] = None,
) -> None:
    """
    Draw source colors, then compare the measured error of the clipped filter
    with every term of the bound.
    """
    f = load_filter(filter_path)
    reference = load_filter(true_map)
    source = _read_stats(stats)

    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    drawn = sample_source(source, samples, rng)
    # Terms use the statistics of the drawn population
    empirical = stats_from_pixels(drawn, min_count=1)
    report = error_bound_report(f, empirical, reference, drawn, lipschitz)
    if not report.clip_regime:
        logger.warning(
            f"{DiagnosticsMessage.OUTSIDE_CLIP_REGIME} - "
            f"Excursion: {report.max_excursion:.6g}"
        )
    if not report.holds:
        logger.warning(
            f"Measured error exceeds the bound - Measured: {report.measured_error:.6g}, "
            f"Bound: {report.total_bound:.6g}"
        )

    payload = report.model_dump_json(indent=2)
    if output is None:
        typer.echo(payload)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(payload + "\n", encoding="utf-8")
    console.print(ColoredOutput.success(f"{DiagnosticsMessage.BOUND_WRITTEN}: {output}"))
