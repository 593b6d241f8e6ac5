"""Commands: ideal, ct, synth, clean."""

import logging
from pathlib import Path
from typing import Annotated, List, Optional

import pandas as pd
import typer
from typer import Typer

from apps.dataset.constants import IMAGE_SUFFIXES, DatasetLayout
from apps.dataset.services import load_triplet, scan_dataset, write_index, write_triplet
from apps.diagnostics.constants import DiagnosticsMessage
from apps.diagnostics.services import compute_metrics, darkness_flag
from apps.imaging.services import load_image, load_mask, masked_stats
from apps.oracle.constants import TEST_SPLIT_PERIOD, OracleMessage
from apps.oracle.schemas import CompositeTriplet, JitterSpec
from apps.oracle.services import (
    clean_triplet,
    disjoint_item,
    fit_ideal,
    reinhard_ct,
    synth_item,
)
from apps.transport.services import apply_filter, save_filter
from config import settings
from constants.config import DEFAULT_SYNTH_COUNT, DEFAULT_SYNTH_SIZE
from core.constants import Split
from core.utils import ColoredOutput, console, ordered_map
from core.utils.options import EpsOption, SeedOption, ThreadsOption, ThresholdOption

router = Typer()

logger = logging.getLogger(__name__)

CompositeOption = Annotated[
    Path, typer.Option("--composite", exists=True, dir_okay=False)
]
MaskOption = Annotated[Path, typer.Option("--mask", exists=True, dir_okay=False)]
FilterOutput = Annotated[
    Path, typer.Option("--output", help="Filter file (.json/.mklf)")
]


@router.command("ideal", help="Fit the ideal filter of a composite against its real")
def ideal_command(
    composite: CompositeOption,
    mask: MaskOption,
    real: Annotated[
        Path,
        typer.Option("--real", exists=True, dir_okay=False, help="Ground-truth image"),
    ],
    output: FilterOutput,
    metrics: Annotated[
        Optional[Path],
        typer.Option("--metrics", help="Metrics JSON path [default: standard output]"),
    ] = None,
    eps: EpsOption = None,
    threshold: ThresholdOption = None,
) -> None:
    """
    Fit the exact MKL map from the composite foreground to the real foreground,
    then report the metrics of the harmonized composite.
    """
    t = CompositeTriplet(
        composite=load_image(composite),
        mask=load_mask(mask, threshold),
        real=load_image(real),
        name=composite.stem,
    )
    f = fit_ideal(t, eps)
    save_filter(f, output)

    result = apply_filter(t.composite, t.mask, f)
    report = compute_metrics(result, t.real, t.mask)
    if darkness_flag(masked_stats(result, t.mask)):
        logger.warning(f"{DiagnosticsMessage.DARK_OBJECT} - Item: {t.name}")

    payload = report.model_dump_json(indent=2)
    if metrics is None:
        typer.echo(payload)
    else:
        metrics.parent.mkdir(parents=True, exist_ok=True)
        metrics.write_text(payload + "\n", encoding="utf-8")
    console.print(ColoredOutput.success(f"{OracleMessage.IDEAL_DONE}: {output}"))


@router.command("ct", help="Fit the per-channel color-transfer baseline filter")
def ct_command(
    composite: CompositeOption,
    mask: MaskOption,
    output: FilterOutput,
    threshold: ThresholdOption = None,
) -> None:
    """
    Match foreground mean/std to background mean/std per RGB channel.
    """
    t = CompositeTriplet(composite=load_image(composite), mask=load_mask(mask, threshold))
    save_filter(reinhard_ct(t), output)
    console.print(ColoredOutput.success(f"{OracleMessage.CT_DONE}: {output}"))


def _split_for(index: int) -> Split:
    return Split.TEST if index % TEST_SPLIT_PERIOD == TEST_SPLIT_PERIOD - 1 else Split.TRAIN


@router.command("synth", help="Generate a synthetic dataset with known ground truth")
def synth_command(
    output: Annotated[Path, typer.Option("--output", help="Dataset root to create")],
    count: Annotated[
        int, typer.Option("--count", min=1, help="Items (ignored with --bases)")
    ] = DEFAULT_SYNTH_COUNT,
    size: Annotated[
        int, typer.Option("--size", min=8, help="Side of procedural images")
    ] = DEFAULT_SYNTH_SIZE,
    bases: Annotated[
        Optional[Path],
        typer.Option(
            "--bases",
            exists=True,
            file_okay=False,
            help="Directory of real photos to use instead of procedural scenes",
        ),
    ] = None,
    gain_low: Annotated[float, typer.Option("--gain-low")] = 0.7,
    gain_high: Annotated[float, typer.Option("--gain-high")] = 1.3,
    brightness: Annotated[
        float, typer.Option("--brightness", help="Max absolute shift per channel")
    ] = 0.08,
    mixing: Annotated[
        float, typer.Option("--mixing", help="Max channel-mixing strength")
    ] = 0.08,
    leak_radius: Annotated[
        int,
        typer.Option(
            "--leak-radius", min=0, help="Also jitter this many pixels past the mask"
        ),
    ] = 0,
    disjoint: Annotated[
        bool,
        typer.Option(
            "--disjoint", help="Foreground and background colors in disjoint ranges"
        ),
    ] = False,
    seed: SeedOption = None,
    threads: ThreadsOption = 0,
) -> None:
    """
    Write composites, masks, reals and index.csv; item i is seeded with seed + i.
    """
    seed = settings.SEED if seed is None else seed
    spec = JitterSpec(
        gain_ranges=((gain_low, gain_high),) * 3,
        brightness_range=(-brightness, brightness),
        mixing_range=(0.0, mixing),
        seed=seed,
    )
    base_paths: List[Optional[Path]] = [None] * count
    if bases is not None:
        base_paths = sorted(
            p for p in bases.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES
        )

    def _make(index: int) -> dict:
        if disjoint:
            t = disjoint_item(index, seed, (size, size), spec)
        else:
            base = load_image(base_paths[index]) if base_paths[index] else None
            t = synth_item(index, seed, (size, size), spec, base, leak_radius)
        write_triplet(t, output)
        return {
            "name": t.name,
            "split": str(_split_for(index)),
            "clip_fraction": t.jitter_clip_fraction,
        }

    rows = ordered_map(_make, range(len(base_paths)), threads)
    write_index(output, pd.DataFrame(rows))
    console.print(
        ColoredOutput.success(f"{OracleMessage.SYNTH_DONE}: {output} ({len(rows)} items)")
    )


@router.command("clean", help="Copy a dataset with composite backgrounds set to real")
def clean_command(
    input_dir: Annotated[
        Path, typer.Option("--input", exists=True, file_okay=False, help="Dataset root")
    ],
    output: Annotated[Path, typer.Option("--output", help="Cleaned dataset root")],
    threads: ThreadsOption = 0,
    threshold: ThresholdOption = None,
) -> None:
    """
    Rebuild every composite so only its masked foreground differs from the real.
    """
    index = scan_dataset(input_dir)

    def _clean(entry) -> dict:
        t = clean_triplet(load_triplet(entry, threshold))
        write_triplet(t, output)
        return {"name": t.name, "split": str(entry.split), "clip_fraction": None}

    rows = ordered_map(_clean, index.entries, threads)
    manifest = input_dir / DatasetLayout.INDEX
    if manifest.is_file():
        frame = pd.read_csv(manifest, comment="#", dtype={"name": str})
        write_index(output, frame)
    else:
        write_index(output, pd.DataFrame(rows))
    console.print(
        ColoredOutput.success(f"{OracleMessage.CLEAN_DONE}: {output} ({len(rows)} items)")
    )
