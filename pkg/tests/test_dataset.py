import numpy as np
import pandas as pd
import pytest

from apps.dataset.exceptions import (
    DatasetIndexError,
    InvalidBenchConfig,
    InvalidProbeMethod,
    MissingModel,
)
from apps.dataset.services import (
    aggregate_rows,
    bench,
    bias_probe,
    evaluate,
    load_triplet,
    parse_sizes,
    probe_frame,
    scan_dataset,
    write_triplet,
)
from apps.dataset.services import evaluation as evaluation_module
from apps.dataset.services import probe as leaky_mask_module
from apps.imaging.exceptions import InvalidRadius
from apps.oracle.schemas import JitterSpec
from apps.oracle.services import disjoint_item, synth_item
from core.constants import HarmonizationMethod, Split


def _items(frame: pd.DataFrame) -> pd.DataFrame:
    return frame[~frame["name"].isin(["mean", "sem"])]


def test_scan_reads_manifest(dataset_dir, triplets):
    index = scan_dataset(dataset_dir)
    assert index.names == sorted(t.name for t in triplets)
    assert all(entry.has_real for entry in index.entries)
    assert len(scan_dataset(dataset_dir, Split.TEST)) == 1
    assert len(scan_dataset(dataset_dir, Split.TRAIN)) == 5


def test_scan_without_manifest_tags_all(dataset_dir):
    (dataset_dir / "index.csv").unlink()
    index = scan_dataset(dataset_dir)
    assert len(index) == 6
    assert {entry.split for entry in index.entries} == {Split.ALL}


def test_scan_errors(dataset_dir, triplets):
    (dataset_dir / "masks" / f"{triplets[2].name}.png").unlink()
    with pytest.raises(DatasetIndexError, match=triplets[2].name):
        scan_dataset(dataset_dir)


def test_manifest_name_without_composite(dataset_dir, triplets):
    (dataset_dir / "composites" / f"{triplets[0].name}.png").unlink()
    with pytest.raises(DatasetIndexError):
        scan_dataset(dataset_dir)


def test_stored_triplet_reloads_at_sixteen_bits(dataset_dir, triplets):
    entry = scan_dataset(dataset_dir).entries[0]
    t = load_triplet(entry)
    np.testing.assert_array_equal(t.mask.bits, triplets[0].mask.bits)
    np.testing.assert_allclose(
        t.composite.pixels, triplets[0].composite.pixels, atol=0.51 / 65535.0
    )


def test_identity_evaluation_aggregates(tmp_path, dataset_dir):
    out = tmp_path / "eval"
    frame = evaluate(scan_dataset(dataset_dir), HarmonizationMethod.IDENTITY, output_dir=out)
    items = _items(frame)
    assert len(items) == 6 and len(frame) == 8
    mean_row = frame[frame["name"] == "mean"].iloc[0]
    sem_row = frame[frame["name"] == "sem"].iloc[0]
    mse = items["mse"].astype(float)
    assert mean_row["mse"] == pytest.approx(mse.mean())
    assert sem_row["mse"] == pytest.approx(mse.std(ddof=1) / np.sqrt(6))
    assert (items["clip_fraction"].astype(float) == 0.0).all()

    csv = out / "evaluation.csv"
    assert csv.read_text().startswith("#")
    written = pd.read_csv(csv, comment="#")
    assert list(written.columns) == [
        "name", "method", "mse", "psnr", "fmse", "clip_fraction", "dark_flag", "error"
    ]
    assert len(list((out / "images").glob("*.png"))) == 6


def test_ideal_evaluation_recovers_synthetic_items(dataset_dir):
    frame = evaluate(scan_dataset(dataset_dir), HarmonizationMethod.IDEAL, eps=0.0, workers=3)
    items = _items(frame)
    assert (items["error"] == "").all()
    assert (items["mse"].astype(float) < 1e-2).all()


def test_item_failures_are_reported_not_raised(dataset_dir, triplets):
    (dataset_dir / "reals" / f"{triplets[1].name}.png").unlink()
    frame = evaluate(scan_dataset(dataset_dir), HarmonizationMethod.CT)
    items = _items(frame).set_index("name")
    assert items.loc[triplets[1].name, "error"].startswith("MissingGroundTruth")
    assert items.drop(triplets[1].name)["error"].eq("").all()


def test_predictor_method_needs_model(dataset_dir):
    with pytest.raises(MissingModel):
        evaluate(scan_dataset(dataset_dir), HarmonizationMethod.PREDICTOR)


def test_aggregate_of_single_item_has_zero_sem():
    frame = pd.DataFrame(
        [{"name": "a", "method": "ct", "mse": 2.0, "psnr": 40.0, "fmse": 3.0,
          "clip_fraction": 0.0, "dark_flag": False, "error": ""}]
    )
    rows = aggregate_rows(frame)
    assert rows.iloc[0]["mse"] == 2.0
    assert rows.iloc[1]["mse"] == 0.0


def test_leaky_masks_shift_filters_on_disjoint_colors(tmp_path):
    root = tmp_path / "disjoint"
    for i in range(4):
        write_triplet(disjoint_item(i, 0, (40, 40), JitterSpec()), root)
    report = bias_probe(scan_dataset(root), HarmonizationMethod.IDEAL, radius=2, eps=0.0)
    assert len(report.rows) == 4
    assert all(row.error == "" and row.param_l1 > 0.0 for row in report.rows)
    assert report.mean_param_l1 == pytest.approx(np.mean([r.param_l1 for r in report.rows]))
    frame = probe_frame(report)
    assert list(frame["name"])[-2:] == ["mean", "sem"]


def test_leaky_mask_arguments(dataset_dir):
    index = scan_dataset(dataset_dir)
    with pytest.raises(InvalidRadius):
        bias_probe(index, HarmonizationMethod.IDEAL, radius=0)
    with pytest.raises(InvalidProbeMethod):
        bias_probe(index, HarmonizationMethod.CT, radius=1)
    with pytest.raises(MissingModel):
        bias_probe(index, HarmonizationMethod.PREDICTOR, radius=1)


def test_parse_sizes():
    assert parse_sizes("64x32, 8X8") == [(64, 32), (8, 8)]
    for bad in ("abc", "0x5", "3x4x5", ""):
        with pytest.raises(InvalidBenchConfig):
            parse_sizes(bad)


def test_bench_reports_each_size():
    frame = bench([(16, 16), (32, 24)], repetitions=2, seed=1)
    assert list(frame["size"]) == ["16x16", "32x24"]
    assert (frame["iters_per_sec_min"] > 0).all()
    assert (frame["iters_per_sec_min"] <= frame["iters_per_sec_median"]).all()
    assert (frame["iters_per_sec_median"] <= frame["iters_per_sec_max"]).all()
    with pytest.raises(InvalidBenchConfig):
        bench([(16, 16)], repetitions=0)


def test_split_without_manifest_keeps_every_item(dataset_dir):
    (dataset_dir / "index.csv").unlink()
    assert len(scan_dataset(dataset_dir, Split.TRAIN)) == 6
    assert len(scan_dataset(dataset_dir, Split.TEST)) == 6


def test_non_domain_failures_stay_per_item(monkeypatch, dataset_dir, triplets):
    broken = triplets[2].name

    def flaky_load(entry, threshold=None):
        if entry.name == broken:
            raise OSError("device not ready")
        return load_triplet(entry, threshold)

    monkeypatch.setattr(evaluation_module, "load_triplet", flaky_load)
    monkeypatch.setattr(leaky_mask_module, "load_triplet", flaky_load)

    frame = evaluate(scan_dataset(dataset_dir), HarmonizationMethod.IDEAL, workers=2)
    items = _items(frame).set_index("name")
    assert items.loc[broken, "error"] == "DataError: OSError: device not ready"
    assert items.drop(broken)["error"].eq("").all()

    report = bias_probe(scan_dataset(dataset_dir), HarmonizationMethod.IDEAL, radius=1)
    errors = {row.name: row.error for row in report.rows}
    assert errors[broken].startswith("DataError: OSError")
    assert sum(1 for error in errors.values() if error) == 1


def test_ideal_beats_identity_and_color_transfer(dataset_dir):
    index = scan_dataset(dataset_dir)
    mse = {
        method: _items(evaluate(index, method, eps=0.0))["mse"].astype(float).mean()
        for method in (
            HarmonizationMethod.IDEAL,
            HarmonizationMethod.IDENTITY,
            HarmonizationMethod.CT,
        )
    }
    assert mse[HarmonizationMethod.IDEAL] < mse[HarmonizationMethod.IDENTITY]
    assert mse[HarmonizationMethod.IDEAL] < mse[HarmonizationMethod.CT]
    assert mse[HarmonizationMethod.IDEAL] <= 0.2 * mse[HarmonizationMethod.IDENTITY]


def test_leaky_masks_keep_filters_on_matched_statistics():
    # The jitter also covers a border wider than the dilation radius
    spec = JitterSpec(
        gain_ranges=((0.8, 1.2),) * 3,
        brightness_range=(-0.05, 0.05),
        mixing_range=(0.0, 0.05),
    )
    items = [synth_item(i, 3, (40, 40), spec, leak_radius=4) for i in range(4)]
    assert all(t.jitter_clip_fraction == 0.0 for t in items)
    report = bias_probe(items, HarmonizationMethod.IDEAL, radius=2, eps=0.0)
    assert all(row.error == "" for row in report.rows)
    assert all(row.param_l1 < 1e-3 for row in report.rows)


def test_bench_throughput_falls_with_resolution():
    frame = bench([(32, 32), (256, 256), (1024, 1024)], repetitions=3, seed=2)
    medians = list(frame["iters_per_sec_median"])
    assert medians[0] > medians[1] > medians[2]
