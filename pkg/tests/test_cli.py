import json
import logging

import pandas as pd
import pytest
from PIL import Image as PILImage
from typer.testing import CliRunner

from apps.imaging.services import save_mask, to_uint8
from apps.transport.schemas import MklFilter
from apps.transport.services import load_filter, save_filter, save_filter_sequence
from cli import cli, run
from core.utils.logging_config import StructuredFormatter, setup_logging

SUBCOMMANDS = {
    "fit": ["--composite", "--mask", "--target", "--output", "--target-mask", "--eps"],
    "ideal": ["--composite", "--mask", "--real", "--output", "--metrics"],
    "apply": ["--image", "--mask", "--filter", "--output", "--threads"],
    "ct": ["--composite", "--mask", "--output"],
    "synth": ["--output", "--count", "--size", "--bases", "--leak-radius", "--seed"],
    "clean": ["--input", "--output"],
    "evaluate": ["--dataset", "--method", "--output", "--model", "--split"],
    "train": ["--dataset", "--output", "--epochs", "--alpha", "--norm", "--seed"],
    "predict": ["--model", "--composite", "--mask", "--output"],
    "smooth": ["--input", "--output", "--beta"],
    "bound": ["--filter", "--stats", "--true-map", "--samples", "--lipschitz"],
    "bias-probe": ["--dataset", "--radius", "--method", "--output"],
    "bench": ["--sizes", "--repetitions", "--parallel", "--threads", "--output"],
}


def _stem_paths(root, name):
    return [
        str(root / "composites" / f"{name}.png"),
        str(root / "masks" / f"{name}.png"),
        str(root / "reals" / f"{name}.png"),
    ]


@pytest.mark.parametrize("command, flags", SUBCOMMANDS.items())
def test_help_lists_flags(capsys, command, flags):
    assert run([command, "--help"]) == 0
    out = capsys.readouterr().out
    for flag in flags:
        assert flag in out


def test_top_level_help(capsys):
    assert run(["--help"]) == 0
    out = capsys.readouterr().out
    for command in SUBCOMMANDS:
        assert command in out


@pytest.mark.parametrize(
    "args",
    [
        ["fit", "--bogus"],
        ["nonexistent"],
        ["bench", "--threads", "-1"],
        ["evaluate", "--dataset", ".", "--method", "magic", "--output", "x"],
        ["bench", "--sizes", "12by12"],
    ],
)
def test_usage_errors_exit_one(args):
    assert run(args) == 1
    result = CliRunner().invoke(cli, args)
    assert isinstance(result.exception, SystemExit)
    assert result.exit_code == 1


def test_undecodable_image_exits_two(tmp_path):
    image = tmp_path / "image.png"
    image.write_text("not an image")
    filter_path = save_filter(MklFilter.identity(), tmp_path / "f.json")
    args = [
        "apply", "--image", str(image), "--mask", str(image),
        "--filter", str(filter_path), "--output", str(tmp_path / "out.png"),
    ]
    assert run(args) == 2


def test_malformed_filter_exits_two(tmp_path, dataset_dir, triplets):
    composite, mask, _ = _stem_paths(dataset_dir, triplets[0].name)
    bad = tmp_path / "bad.json"
    bad.write_text('{"a": [1, 2], "s": [0, 0, 0]}')
    args = [
        "apply", "--image", composite, "--mask", mask,
        "--filter", str(bad), "--output", str(tmp_path / "out.png"),
    ]
    assert run(args) == 2


def test_synth_then_evaluate(tmp_path):
    root = tmp_path / "synth"
    assert run(["synth", "--output", str(root), "--count", "12", "--size", "32"]) == 0
    index = pd.read_csv(root / "index.csv")
    assert len(index) == 12
    assert list(index["split"]).count("test") == 1
    assert (index["clip_fraction"] == 0.0).all()

    out = tmp_path / "eval"
    assert run(["evaluate", "--dataset", str(root), "--method", "ideal", "--output", str(out)]) == 0
    frame = pd.read_csv(out / "evaluation.csv", comment="#")
    assert len(frame) == 14


def test_synth_is_reproducible(tmp_path):
    for name in ("a", "b"):
        assert run(["synth", "--output", str(tmp_path / name), "--count", "2", "--size", "24", "--seed", "9"]) == 0
    for sub in ("composites", "masks", "reals"):
        for path in sorted((tmp_path / "a" / sub).iterdir()):
            assert path.read_bytes() == (tmp_path / "b" / sub / path.name).read_bytes()


def test_ideal_prints_metrics_and_apply_writes_png(tmp_path, capsys, dataset_dir, triplets):
    composite, mask, real = _stem_paths(dataset_dir, triplets[0].name)
    filter_path = tmp_path / "ideal.mklf"
    args = ["ideal", "--composite", composite, "--mask", mask, "--real", real, "--output", str(filter_path)]
    assert run(args) == 0
    metrics = json.loads(capsys.readouterr().out)
    assert metrics["mse"] < 1e-2
    assert load_filter(filter_path).a.shape == (3, 3)

    output = tmp_path / "harmonized.png"
    args = ["apply", "--image", composite, "--mask", mask, "--filter", str(filter_path), "--output", str(output)]
    assert run(args) == 0
    assert output.read_bytes().startswith(b"\x89PNG")


def test_fit_ct_and_smooth(tmp_path, dataset_dir, triplets):
    composite, mask, real = _stem_paths(dataset_dir, triplets[0].name)
    fitted, ct = tmp_path / "fit.json", tmp_path / "ct.json"
    assert run(["fit", "--composite", composite, "--mask", mask, "--target", real, "--output", str(fitted)]) == 0
    assert run(["ct", "--composite", composite, "--mask", mask, "--output", str(ct)]) == 0

    sequence = save_filter_sequence([load_filter(fitted), load_filter(ct)], tmp_path / "seq.json")
    smoothed = tmp_path / "smoothed.json"
    assert run(["smooth", "--input", str(sequence), "--output", str(smoothed), "--beta", "0.5"]) == 0
    assert len(json.loads(smoothed.read_text())) == 2
    assert run(["smooth", "--input", str(sequence), "--output", str(smoothed), "--beta", "1.5"]) == 1


def test_clean_copies_dataset(tmp_path, dataset_dir):
    out = tmp_path / "clean"
    assert run(["clean", "--input", str(dataset_dir), "--output", str(out)]) == 0
    assert len(list((out / "composites").glob("*.png"))) == 6
    assert (out / "index.csv").is_file()


def test_train_predict_and_bias_check(tmp_path, dataset_dir, triplets):
    model = tmp_path / "model.json"
    args = ["train", "--dataset", str(dataset_dir), "--output", str(model), "--epochs", "2", "--batch-size", "2"]
    assert run(args) == 0
    assert json.loads(model.read_text())["version"] == "mklp-1"

    composite, mask, _ = _stem_paths(dataset_dir, triplets[0].name)
    predicted = tmp_path / "predicted.json"
    args = ["predict", "--model", str(model), "--composite", composite, "--mask", mask, "--output", str(predicted)]
    assert run(args) == 0
    assert predicted.is_file()

    drift = tmp_path / "drift.csv"
    assert run(["bias-probe", "--dataset", str(dataset_dir), "--output", str(drift)]) == 0
    frame = pd.read_csv(drift, comment="#")
    assert list(frame["name"])[-2:] == ["mean", "sem"]

    assert run(["evaluate", "--dataset", str(dataset_dir), "--method", "predictor", "--output", str(tmp_path / "e")]) == 1


def test_bound_reports_terms(tmp_path, capsys):
    identity = save_filter(MklFilter.identity(), tmp_path / "identity.json")
    stats = tmp_path / "stats.json"
    stats.write_text(json.dumps({"mean": [0.5, 0.5, 0.5], "cov": [0.01, 0, 0, 0, 0.01, 0, 0, 0, 0.01], "count": 1}))
    args = ["bound", "--filter", str(identity), "--stats", str(stats), "--true-map", str(identity), "--samples", "2000"]
    assert run(args) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["measured_error"] <= report["total_bound"]
    assert report["sample_count"] == 2000

    stats.write_text('{"mean": [0.5]}')
    assert run(args) == 2


def test_bench_prints_csv(capsys):
    assert run(["bench", "--sizes", "16x16,24x16", "--repetitions", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "size,iters_per_sec_median,iters_per_sec_min,iters_per_sec_max"
    assert [line.split(",")[0] for line in lines[1:]] == ["16x16", "24x16"]


def test_data_errors_exit_two_through_the_runner(tmp_path):
    image = tmp_path / "image.png"
    image.write_text("not an image")
    filter_path = save_filter(MklFilter.identity(), tmp_path / "f.json")
    args = [
        "apply", "--image", str(image), "--mask", str(image),
        "--filter", str(filter_path), "--output", str(tmp_path / "out.png"),
    ]
    assert CliRunner().invoke(cli, args).exit_code == 2
    assert CliRunner().invoke(cli, ["--help"]).exit_code == 0


@pytest.mark.parametrize("threshold", ["0", "1", "1.5", "-0.2"])
def test_threshold_is_checked_before_reading(tmp_path, threshold):
    # Reading this file would be a data error (exit 2)
    image = tmp_path / "image.png"
    image.write_text("not an image")
    filter_path = save_filter(MklFilter.identity(), tmp_path / "f.json")
    output = tmp_path / "out.png"
    args = [
        "apply", "--image", str(image), "--mask", str(image), "--filter", str(filter_path),
        "--output", str(output), "--threshold", threshold,
    ]
    assert run(args) == 1
    assert not output.exists()

    out_dir = tmp_path / "eval"
    args = ["evaluate", "--dataset", str(tmp_path), "--method", "ct", "--output", str(out_dir), "--threshold", threshold]
    assert run(args) == 1
    assert not out_dir.exists()


@pytest.mark.parametrize("beta", ["1.5", "1", "-0.1"])
def test_beta_is_checked_before_reading(tmp_path, beta):
    sequence = tmp_path / "seq.json"
    sequence.write_text("not json")
    output = tmp_path / "smoothed.json"
    args = ["smooth", "--input", str(sequence), "--output", str(output), "--beta", beta]
    assert run(args) == 1
    assert not output.exists()


def test_leaky_mask_radius_must_be_positive(tmp_path, dataset_dir):
    output = tmp_path / "drift.csv"
    args = ["bias-probe", "--dataset", str(dataset_dir), "--output", str(output), "--radius", "0"]
    assert run(args) == 1
    assert not output.exists()


def test_train_without_manifest_uses_every_item(tmp_path, dataset_dir):
    (dataset_dir / "index.csv").unlink()
    model = tmp_path / "model.json"
    args = ["train", "--dataset", str(dataset_dir), "--output", str(model), "--epochs", "1", "--batch-size", "3"]
    assert run(args) == 0
    assert model.is_file()


def test_identity_filter_leaves_png_bytes_unchanged(tmp_path, triplet):
    image = tmp_path / "image.png"
    PILImage.fromarray(to_uint8(triplet.composite.pixels), mode="RGB").save(image, format="PNG")
    mask = save_mask(triplet.mask, tmp_path / "mask.png")
    identity = save_filter(MklFilter.identity(), tmp_path / "identity.json")
    output = tmp_path / "out.png"
    args = ["apply", "--image", str(image), "--mask", str(mask), "--filter", str(identity), "--output", str(output)]
    assert run(args) == 0
    assert output.read_bytes() == image.read_bytes()


def test_logging_uses_structured_formatter_only():
    setup_logging(log_level="INFO", enable_console=True)
    handlers = logging.getLogger("apps").handlers
    assert handlers
    assert all(isinstance(handler.formatter, StructuredFormatter) for handler in handlers)
