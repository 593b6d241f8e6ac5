"""Commands: fit, apply, smooth."""

import logging
from pathlib import Path
from typing import Annotated, Optional

import typer
from typer import Typer

from apps.diagnostics.constants import DiagnosticsMessage
from apps.diagnostics.services import darkness_flag
from apps.imaging.services import load_image, load_mask, masked_stats, save_image
from apps.transport.constants import TransportMessage
from apps.transport.services import (
    apply_filter,
    fit_mkl,
    load_filter,
    load_filter_sequence,
    save_filter,
    save_filter_sequence,
    smooth_sequence,
)
from constants.config import MIN_REGION_PIXELS
from core.utils import ColoredOutput, console
from core.utils.options import BetaOption, EpsOption, ThreadsOption, ThresholdOption

router = Typer()

logger = logging.getLogger(__name__)


@router.command("fit", help="Fit an MKL filter from a composite foreground to a target")
def fit_command(
    composite: Annotated[Path, typer.Option("--composite", exists=True, dir_okay=False)],
    mask: Annotated[Path, typer.Option("--mask", exists=True, dir_okay=False)],
    target: Annotated[
        Path,
        typer.Option("--target", exists=True, dir_okay=False, help="Target image"),
    ],
    output: Annotated[Path, typer.Option("--output", help="Filter file (.json/.mklf)")],
    target_mask: Annotated[
        Optional[Path],
        typer.Option(
            "--target-mask",
            exists=True,
            dir_okay=False,
            help="Region of the target to match [default: --mask]",
        ),
    ] = None,
    eps: EpsOption = None,
    threshold: ThresholdOption = None,
) -> None:
    """
    Fit the closed-form filter between two masked color populations.
    """
    src_img = load_image(composite)
    src_mask = load_mask(mask, threshold)
    dst_img = load_image(target)
    dst_mask = load_mask(target_mask, threshold) if target_mask else src_mask

    f = fit_mkl(masked_stats(src_img, src_mask), masked_stats(dst_img, dst_mask), eps)
    save_filter(f, output)
    console.print(ColoredOutput.success(f"{TransportMessage.FILTER_SAVED}: {output}"))


@router.command("apply", help="Apply a filter to the masked region of an image")
def apply_command(
    image: Annotated[Path, typer.Option("--image", exists=True, dir_okay=False)],
    mask: Annotated[Path, typer.Option("--mask", exists=True, dir_okay=False)],
    filter_path: Annotated[
        Path, typer.Option("--filter", exists=True, dir_okay=False, help="Filter file")
    ],
    output: Annotated[Path, typer.Option("--output", help="Output PNG")],
    threads: ThreadsOption = 0,
    threshold: ThresholdOption = None,
) -> None:
    """
    Harmonize the foreground with clip(a x + s) and write an 8-bit PNG.
    """
    img = load_image(image)
    fg = load_mask(mask, threshold)
    f = load_filter(filter_path)
    result = apply_filter(img, fg, f, threads)
    if fg.count >= MIN_REGION_PIXELS and darkness_flag(masked_stats(result, fg)):
        logger.warning(f"{DiagnosticsMessage.DARK_OBJECT} - Image: {image}")
    save_image(result, output)
    console.print(ColoredOutput.success(f"{TransportMessage.IMAGE_SAVED}: {output}"))


@router.command("smooth", help="EMA-smooth a sequence of per-frame filters")
def smooth_command(
    input_path: Annotated[
        Path,
        typer.Option(
            "--input", exists=True, dir_okay=False, help="JSON array of filters"
        ),
    ],
    output: Annotated[Path, typer.Option("--output", help="Smoothed JSON array")],
    beta: BetaOption = None,
) -> None:
    """
    Smooth filters frame by frame; the first frame passes through.
    """
    smoothed = smooth_sequence(load_filter_sequence(input_path), beta)
    save_filter_sequence(smoothed, output)
    console.print(
        ColoredOutput.success(
            f"{TransportMessage.SEQUENCE_SAVED}: {output} ({len(smoothed)} frames)"
        )
    )
