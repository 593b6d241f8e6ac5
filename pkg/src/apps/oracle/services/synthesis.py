"""Synthetic composites: procedural scenes and a known affine color jitter."""

import logging
from typing import Optional, Tuple

import numpy as np

from apps.imaging.schemas import Image, Mask
from apps.imaging.services import check_shapes, dilate_mask
from apps.oracle.constants import JITTER_PIVOT
from apps.oracle.schemas import CompositeTriplet, JitterSpec
from apps.transport.schemas import MklFilter
from apps.transport.services import clip_points, outside_cube

logger = logging.getLogger(__name__)

Size = Tuple[int, int]

_BASE_LOW = 0.25
_BASE_HIGH = 0.75
_NOISE_SIGMA = 0.02


def draw_jitter(spec: JitterSpec, rng: Optional[np.random.Generator] = None) -> MklFilter:
    """Draw one affine jitter ``x -> L (x - p) + p + b`` from ``spec``.

    ``L = D C D`` is symmetric positive definite and ``p`` is mid-gray.
    """
    rng = np.random.default_rng(spec.seed) if rng is None else rng
    gains = np.array([rng.uniform(low, high) for low, high in spec.gain_ranges])
    root = np.diag(np.sqrt(gains))

    low, high = spec.mixing_range
    coupling = np.eye(3)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        strength = rng.uniform(low, high) * rng.choice((-1.0, 1.0))
        coupling[i, j] = coupling[j, i] = strength

    linear = root @ coupling @ root
    shift = rng.uniform(*spec.brightness_range, size=3)
    pivot = np.full(3, JITTER_PIVOT)
    return MklFilter(a=linear, s=pivot - linear @ pivot + shift)


def synth_triplet(
    base: Image,
    mask: Mask,
    spec: JitterSpec,
    leak_radius: int = 0,
    name: str = "",
) -> CompositeTriplet:
    """Build a composite whose ground truth is ``base``.

    The foreground (or the mask dilated by ``leak_radius``, for objects that spill
    past their mask) is pushed through a random jitter and clipped to the cube.

    Args:
        base: Ground-truth image
        mask: Foreground selection
        spec: Jitter distribution and seed
        leak_radius: Extra border around the mask that is jittered as well
        name: Stem recorded on the triplet

    Returns:
        Triplet carrying the jitter filter and its clip fraction

    Raises:
        ShapeMismatch: If base and mask dimensions differ
    """
    check_shapes(base, mask)
    jitter = draw_jitter(spec)
    region = dilate_mask(mask, leak_radius).bits if leak_radius > 0 else mask.bits

    moved = jitter.map_points(base.pixels[region])
    clip_fraction = float(np.mean(outside_cube(moved))) if moved.size else 0.0
    pixels = base.pixels.copy()
    pixels[region] = clip_points(moved)

    return CompositeTriplet(
        composite=Image.trusted(pixels),
        mask=mask,
        real=base,
        name=name,
        jitter=jitter,
        jitter_clip_fraction=clip_fraction,
    )


def _smooth_field(size: Size, rng: np.random.Generator) -> np.ndarray:
    """Linear gradient plus a few Gaussian blobs, one value per pixel and channel."""
    height, width = size
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    yy /= max(height - 1, 1)
    xx /= max(width - 1, 1)

    field = np.zeros((height, width, 3))
    direction = rng.uniform(-1.0, 1.0, size=(2, 3)) * 0.12
    field += xx[:, :, None] * direction[0] + yy[:, :, None] * direction[1]

    for _ in range(int(rng.integers(3, 7))):
        cy, cx = rng.uniform(0.0, 1.0, size=2)
        sigma = rng.uniform(0.05, 0.2)
        weight = np.exp(-((yy - cy) ** 2 + (xx - cx) ** 2) / (2.0 * sigma**2))
        field += weight[:, :, None] * rng.uniform(-0.15, 0.15, size=3)
    return field


def procedural_base(size: Size, rng: np.random.Generator) -> Image:
    """Random smooth scene around a per-image palette color, values near [0.25, 0.75].

    Args:
        size: (height, width)
        rng: Random generator

    Returns:
        Image with channels in [0, 1]
    """
    height, width = size
    palette = rng.uniform(0.35, 0.65, size=3)
    pixels = palette + _smooth_field(size, rng)
    pixels += rng.normal(0.0, _NOISE_SIGMA, size=(height, width, 3))
    return Image.trusted(np.clip(pixels, _BASE_LOW, _BASE_HIGH))


def procedural_mask(size: Size, rng: np.random.Generator) -> Mask:
    """Random axis-aligned ellipse covering roughly 5-40% of the frame."""
    height, width = size
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    cy = rng.uniform(0.35, 0.65) * (height - 1)
    cx = rng.uniform(0.35, 0.65) * (width - 1)
    ry = max(rng.uniform(0.15, 0.35) * height, 2.5)
    rx = max(rng.uniform(0.15, 0.35) * width, 2.5)
    inside = ((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2 <= 1.0
    return Mask.trusted(inside)


def synth_item(
    index: int,
    seed: int,
    size: Size,
    spec: JitterSpec,
    base: Optional[Image] = None,
    leak_radius: int = 0,
) -> CompositeTriplet:
    """Item ``index`` of a synthetic corpus, seeded by ``seed + index``.

    Without ``base`` the scene is procedural. A supplied base keeps its own size.
    """
    item_seed = seed + index
    rng = np.random.default_rng([item_seed, 1])
    if base is None:
        base = procedural_base(size, rng)
    mask = procedural_mask(base.shape, rng)
    item_spec = spec.model_copy(update={"seed": item_seed})
    return synth_triplet(
        base, mask, item_spec, leak_radius=leak_radius, name=f"synth_{index:05d}"
    )


def disjoint_item(index: int, seed: int, size: Size, spec: JitterSpec) -> CompositeTriplet:
    """Item whose foreground and background colors occupy disjoint ranges.

    Background channels stay in [0.05, 0.35] and foreground channels in
    [0.65, 0.95], so any background pixel a dilated mask picks up is far from the
    foreground population.
    """
    item_seed = seed + index
    rng = np.random.default_rng([item_seed, 2])
    mask = procedural_mask(size, rng)
    field = _smooth_field(size, rng) * 0.5
    noise = rng.normal(0.0, _NOISE_SIGMA, size=(*size, 3))
    dark = np.clip(rng.uniform(0.15, 0.25, size=3) + field + noise, 0.05, 0.35)
    bright = np.clip(rng.uniform(0.75, 0.85, size=3) + field + noise, 0.65, 0.95)
    base = Image.trusted(np.where(mask.bits[:, :, None], bright, dark))
    item_spec = spec.model_copy(update={"seed": item_seed})
    return synth_triplet(base, mask, item_spec, name=f"disjoint_{index:05d}")
