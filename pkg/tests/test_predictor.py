import numpy as np
import pytest

from apps.oracle.schemas import JitterSpec
from apps.oracle.services import fit_ideal, synth_item
from apps.predictor.exceptions import EmptyDataset, ModelFormatError
from apps.predictor.schemas import TrainConfig
from apps.predictor.services import (
    PredictorTrainer,
    channel_histograms,
    extract_features,
    init_model,
    item_loss,
    load_model,
    loss,
    predict,
    predict_output,
    save_model,
    train,
)
from apps.predictor.services.network import backward, forward, init_layers
from apps.transport.schemas import MklFilter
from core.constants import LossNorm, OptimizerType, Parameterization, ScheduleType


def test_feature_layout(triplet):
    values = extract_features(triplet).values
    assert values.shape == (67,)
    fg_hist = values[18:42].reshape(3, 8)
    bg_hist = values[42:66].reshape(3, 8)
    np.testing.assert_allclose(fg_hist.sum(axis=1), 1.0)
    np.testing.assert_allclose(bg_hist.sum(axis=1), 1.0)
    assert values[66] == pytest.approx(triplet.mask.area_fraction)


def test_features_ignore_pixel_order(triplet, rng):
    order = rng.permutation(triplet.mask.bits.size)
    h, w = triplet.mask.shape
    composite = triplet.composite.pixels.reshape(-1, 3)[order].reshape(h, w, 3)
    bits = triplet.mask.bits.reshape(-1)[order].reshape(h, w)
    shuffled = triplet.model_copy(
        update={
            "composite": type(triplet.composite)(pixels=composite),
            "mask": type(triplet.mask)(bits=bits),
        }
    )
    np.testing.assert_allclose(
        extract_features(shuffled).values, extract_features(triplet).values, atol=1e-12
    )


def test_histogram_puts_one_in_last_bin():
    hist = channel_histograms(np.array([[0.0, 1.0, 0.5]])).reshape(3, 8)
    assert hist[0, 0] == 1.0 and hist[1, 7] == 1.0 and hist[2, 4] == 1.0


@pytest.mark.parametrize("parameterization", list(Parameterization))
def test_untrained_model_predicts_identity(triplet, parameterization):
    model = init_model(TrainConfig(parameterization=parameterization))
    f = predict(model, triplet, eps=0.0)
    np.testing.assert_allclose(f.a, np.eye(3), atol=1e-6)
    np.testing.assert_allclose(f.s, np.zeros(3), atol=1e-6)


def test_labels_loss_example(triplet):
    target = fit_ideal(triplet)
    output = target.params.copy()
    output[4] += 0.1
    l1 = loss(output, target, triplet, alpha=0.0, norm=LossNorm.L1)
    assert l1.labels == pytest.approx(0.1 / 12)
    assert l1.total == l1.labels
    l2 = loss(output, target, triplet, alpha=0.0, norm=LossNorm.L2)
    assert l2.labels == pytest.approx(0.01 / 12)


def test_total_combines_terms(triplet):
    target = fit_ideal(triplet)
    breakdown = loss(MklFilter.identity().params, target, triplet, alpha=10.0)
    assert breakdown.content > 0.0
    assert breakdown.total == pytest.approx(
        breakdown.labels + 10.0 * breakdown.content, abs=1e-12
    )


def test_content_is_zero_for_exact_filter():
    t = synth_item(1, 0, (48, 48), JitterSpec())
    target = fit_ideal(t, eps=0.0)
    assert loss(target.params, target, t, alpha=1.0).content < 1e-9


@pytest.mark.parametrize("norm", list(LossNorm))
def test_output_gradient_matches_central_differences(triplets, rng, norm):
    trainer = PredictorTrainer(TrainConfig(eps=0.0, content_pixels=256), workers=1)
    contexts = trainer.prepare(triplets[:3])
    for ctx in contexts:
        output = ctx.labels + rng.normal(0.0, 0.05, size=12)
        _, grad = item_loss(output, ctx, 10.0, norm)
        numeric = np.empty(12)
        h = 1e-7
        for j in range(12):
            up, down = output.copy(), output.copy()
            up[j] += h
            down[j] -= h
            numeric[j] = (
                item_loss(up, ctx, 10.0, norm, with_grad=False)[0].total
                - item_loss(down, ctx, 10.0, norm, with_grad=False)[0].total
            ) / (2 * h)
        rel = np.linalg.norm(grad - numeric) / max(np.linalg.norm(numeric), 1e-12)
        assert rel < 1e-4


def test_backpropagation_matches_central_differences(rng):
    for _ in range(20):
        sizes = [5, 4, 3, 12]
        layers = init_layers(sizes, rng.normal(size=12), rng)
        layers[-1] = (rng.normal(0.0, 0.5, size=(12, 3)), layers[-1][1])
        inputs = rng.normal(size=(4, 5))
        weights_out = rng.normal(size=(4, 12))

        def scalar(ls):
            out, _ = forward(ls, inputs)
            return float(np.sum(out * weights_out))

        _, activations = forward(layers, inputs)
        grads = backward(layers, activations, weights_out)
        for k, (w, _) in enumerate(layers):
            numeric = np.empty_like(w)
            for idx in np.ndindex(w.shape):
                up = [(a.copy(), b.copy()) for a, b in layers]
                down = [(a.copy(), b.copy()) for a, b in layers]
                up[k][0][idx] += 1e-6
                down[k][0][idx] -= 1e-6
                numeric[idx] = (scalar(up) - scalar(down)) / 2e-6
            rel = np.linalg.norm(grads[k][0] - numeric) / max(np.linalg.norm(numeric), 1e-12)
            assert rel < 1e-4


def test_learning_rate_stages():
    trainer = PredictorTrainer(TrainConfig(epochs=100, learning_rate=1.0))
    assert trainer.learning_rate(0) == 1.0
    assert trainer.learning_rate(24) == 1.0
    assert trainer.learning_rate(25) == pytest.approx(0.1)
    assert trainer.learning_rate(55) == pytest.approx(0.05)
    constant = PredictorTrainer(TrainConfig(schedule=ScheduleType.CONSTANT))
    assert constant.learning_rate(99) == constant.config.learning_rate


def _constant_filter_set():
    spec = JitterSpec(
        gain_ranges=((1.2, 1.2), (0.9, 0.9), (1.1, 1.1)),
        brightness_range=(0.03, 0.03),
        mixing_range=(0.0, 0.0),
    )
    return [synth_item(i, 100, (32, 32), spec) for i in range(8)]


def test_training_fits_constant_filter():
    dataset = _constant_filter_set()
    # No hidden layer: the objective is a convex quadratic in the weights
    config = TrainConfig(
        epochs=800,
        learning_rate=0.1,
        batch_size=8,
        alpha=0.0,
        norm=LossNorm.L2,
        optimizer=OptimizerType.SGD,
        schedule=ScheduleType.CONSTANT,
        hidden_sizes=(),
        validation_fraction=0.0,
        eps=0.0,
    )
    model = train(dataset, config, workers=1)
    for t in dataset:
        labels = fit_ideal(t, eps=0.0).params
        output = predict_output(model, extract_features(t).values)
        assert np.mean(np.abs(output - labels)) < 1e-3


def test_small_step_gradient_descent_is_monotone():
    dataset = [synth_item(i, 3, (24, 24), JitterSpec()) for i in range(10)]
    config = TrainConfig(
        epochs=15,
        learning_rate=1e-4,
        batch_size=10,
        alpha=0.0,
        norm=LossNorm.L2,
        optimizer=OptimizerType.SGD,
        schedule=ScheduleType.CONSTANT,
        validation_fraction=0.0,
    )
    model = train(dataset, config, workers=1)
    losses = [record.val_total for record in model.history]
    assert len(losses) == 16
    assert all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))


def test_training_records_history_and_reloads(tmp_path, triplets):
    config = TrainConfig(epochs=3, batch_size=4, content_pixels=128)
    model = train(triplets, config, workers=2)
    assert [record.epoch for record in model.history] == [0, 1, 2, 3]
    assert model.config["epochs"] == 3

    reloaded = load_model(save_model(model, tmp_path / "model.json"))
    features = extract_features(triplets[0]).values
    np.testing.assert_array_equal(
        predict_output(reloaded, features), predict_output(model, features)
    )


def test_training_is_deterministic(triplets):
    config = TrainConfig(epochs=2, batch_size=2, content_pixels=64)
    first = train(triplets, config, workers=1)
    second = train(triplets, config, workers=3)
    for w1, w2 in zip(first.weights, second.weights):
        np.testing.assert_array_equal(w1, w2)


def test_training_errors(tmp_path, triplet):
    with pytest.raises(EmptyDataset):
        train([], TrainConfig(epochs=1))
    bad = tmp_path / "model.json"
    bad.write_text('{"version": "other"}')
    with pytest.raises(ModelFormatError):
        load_model(bad)
    with pytest.raises(ModelFormatError):
        load_model(tmp_path / "missing.json")


def _near_constant_set(count):
    spec = JitterSpec(
        gain_ranges=((1.25, 1.35), (0.8, 0.9), (1.1, 1.2)),
        brightness_range=(0.02, 0.05),
        mixing_range=(0.0, 0.02),
    )
    return [synth_item(i, 40, (24, 24), spec) for i in range(count)]


def test_default_network_halves_validation_loss():
    config = TrainConfig(batch_size=4)
    assert config.hidden_sizes == (64, 64)
    assert config.optimizer == OptimizerType.ADAM
    assert config.schedule == ScheduleType.STAGED
    model = train(_near_constant_set(20), config, workers=1)
    assert model.layer_sizes == [67, 64, 64, 12]
    assert [w.shape for w in model.weights] == [(64, 67), (64, 64), (12, 64)]
    initial = model.history[0].val_total
    assert min(record.val_total for record in model.history[1:]) <= 0.5 * initial


def test_default_network_overfits_one_item():
    item = _near_constant_set(1)
    config = TrainConfig(epochs=300, schedule=ScheduleType.CONSTANT)
    model = train(item, config, workers=1)
    # One item validates on itself
    initial = model.history[0].val_total
    assert initial > 0.0
    assert min(record.val_total for record in model.history[1:]) <= 0.2 * initial
