"""Dataset layout: ``composites/``, ``masks/``, ``reals/`` matched by stem, plus an
optional ``index.csv`` (name, split) that filters the set."""

import logging
from pathlib import Path
from typing import Dict, Iterable, Optional, Union

import pandas as pd

from apps.dataset.constants import (
    IMAGE_SUFFIXES,
    INDEX_COLUMNS,
    DatasetErrorMessage,
    DatasetLayout,
)
from apps.dataset.exceptions import DatasetIndexError
from apps.dataset.schemas import DatasetEntry, DatasetIndex
from apps.imaging.schemas import Image
from apps.imaging.services import load_image, load_mask, save_image, save_mask
from apps.oracle.schemas import CompositeTriplet
from core.constants import Split
from core.exceptions import DataError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _images_by_stem(directory: Path) -> Dict[str, Path]:
    if not directory.is_dir():
        return {}
    found: Dict[str, Path] = {}
    for path in sorted(directory.iterdir()):
        if path.is_file() and path.suffix.lower() in IMAGE_SUFFIXES:
            found.setdefault(path.stem, path)
    return found


def _read_manifest(path: Path) -> Dict[str, Split]:
    try:
        frame = pd.read_csv(path, comment="#", dtype={"name": str})
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as err:
        raise DatasetIndexError(f"Unreadable {path}: {err}") from err
    if "name" not in frame.columns:
        raise DatasetIndexError(f"{path} has no 'name' column")
    splits = frame["split"] if "split" in frame.columns else [Split.ALL] * len(frame)
    manifest: Dict[str, Split] = {}
    for name, split in zip(frame["name"], splits):
        try:
            manifest[str(name)] = Split(str(split).strip().lower())
        except ValueError as err:
            raise DatasetIndexError(f"Unknown split {split!r} for {name}") from err
    return manifest


def scan_dataset(root: PathLike, split: Split = Split.ALL) -> DatasetIndex:
    """Index a dataset directory.

    Args:
        root: Dataset root
        split: Keep entries with this tag plus untagged ones; ALL keeps everything.
            Without ``index.csv`` every entry is untagged and kept

    Returns:
        Entries sorted by name; entries without a real have ``real_path`` None

    Raises:
        DataError: If ``root`` is not a directory
        DatasetIndexError: If a composite has no mask (the stem is named) or the
            manifest lists a name without composite
    """
    root = Path(root)
    if not root.is_dir():
        raise DataError(f"{DatasetErrorMessage.NOT_A_DIRECTORY}: {root}")

    composites = _images_by_stem(root / DatasetLayout.COMPOSITES)
    masks = _images_by_stem(root / DatasetLayout.MASKS)
    reals = _images_by_stem(root / DatasetLayout.REALS)

    manifest_path = root / DatasetLayout.INDEX
    manifest = _read_manifest(manifest_path) if manifest_path.is_file() else None
    if manifest is not None:
        missing = sorted(set(manifest) - set(composites))
        if missing:
            raise DatasetIndexError(
                f"{DatasetErrorMessage.MISSING_COMPOSITE}: {missing[0]}"
            )
        names: Iterable[str] = sorted(manifest)
    else:
        names = sorted(composites)

    if manifest is None and split != Split.ALL:
        logger.warning(
            f"No {DatasetLayout.INDEX} - Requested split: {split}, keeping every item"
        )
    entries = []
    for name in names:
        if name not in masks:
            raise DatasetIndexError(f"{DatasetErrorMessage.MISSING_MASK}: {name}")
        tag = manifest[name] if manifest is not None else Split.ALL
        # Untagged entries belong to every split
        if split != Split.ALL and tag not in (split, Split.ALL):
            continue
        entries.append(
            DatasetEntry(
                name=name,
                composite_path=composites[name],
                mask_path=masks[name],
                real_path=reals.get(name),
                split=tag,
            )
        )

    without_real = sum(1 for entry in entries if not entry.has_real)
    logger.info(
        f"Dataset scanned - Root: {root}, Items: {len(entries)}, "
        f"Without real: {without_real}"
    )
    return DatasetIndex(root=root, entries=entries)


def load_triplet(entry: DatasetEntry, threshold: Optional[float] = None) -> CompositeTriplet:
    """Decode the files of one entry."""
    real: Optional[Image] = load_image(entry.real_path) if entry.real_path else None
    return CompositeTriplet(
        composite=load_image(entry.composite_path),
        mask=load_mask(entry.mask_path, threshold),
        real=real,
        name=entry.name,
    )


def write_triplet(t: CompositeTriplet, root: PathLike) -> None:
    """Store a triplet under ``root`` using the dataset layout.

    Images are written as 16-bit PNG so reloading is exact to 1/65535.
    """
    root = Path(root)
    save_image(t.composite, root / DatasetLayout.COMPOSITES / f"{t.name}.png", 16)
    save_mask(t.mask, root / DatasetLayout.MASKS / f"{t.name}.png")
    if t.real is not None:
        save_image(t.real, root / DatasetLayout.REALS / f"{t.name}.png", 16)


def write_index(root: PathLike, rows: pd.DataFrame) -> Path:
    """Write ``index.csv`` with columns name, split, clip_fraction."""
    path = Path(root) / DatasetLayout.INDEX
    path.parent.mkdir(parents=True, exist_ok=True)
    rows.reindex(columns=INDEX_COLUMNS).to_csv(path, index=False)
    return path
