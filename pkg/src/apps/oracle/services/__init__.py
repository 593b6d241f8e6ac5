from apps.oracle.services.ideal import clean_triplet, fit_ideal, reinhard_ct
from apps.oracle.services.synthesis import (
    disjoint_item,
    draw_jitter,
    procedural_base,
    procedural_mask,
    synth_item,
    synth_triplet,
)

__all__ = [
    "clean_triplet",
    "disjoint_item",
    "draw_jitter",
    "fit_ideal",
    "procedural_base",
    "procedural_mask",
    "reinhard_ct",
    "synth_item",
    "synth_triplet",
]
