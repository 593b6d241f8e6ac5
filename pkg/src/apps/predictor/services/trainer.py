import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from apps.imaging.services import masked_stats
from apps.oracle.schemas import CompositeTriplet
from apps.oracle.services import fit_ideal
from apps.predictor.constants import (
    ADAM_BETA1,
    ADAM_BETA2,
    ADAM_EPSILON,
    FEATURE_STD_FLOOR,
    STAGED_DROPS,
)
from apps.predictor.exceptions import EmptyDataset, NonFiniteLoss
from apps.predictor.schemas import EpochRecord, PredictorModel, TrainConfig
from apps.predictor.services.features import extract_features
from apps.predictor.services.loss import (
    LossContext,
    identity_output,
    item_loss,
    stats_labels,
)
from apps.predictor.services.network import Layers, backward, forward, init_layers
from constants.config import FEATURE_DIM, FILTER_PARAMS
from core.constants import OptimizerType, Parameterization, ScheduleType
from core.utils import ordered_map
from core.utils.logging_config import log_performance_metric

logger = logging.getLogger(__name__)


def build_model(
    layers: Layers,
    config: TrainConfig,
    feature_mean: Optional[np.ndarray] = None,
    feature_std: Optional[np.ndarray] = None,
    history: Optional[List[EpochRecord]] = None,
) -> PredictorModel:
    """Wrap raw layers into an immutable model carrying the config echo."""
    return PredictorModel(
        layer_sizes=[FEATURE_DIM, *config.hidden_sizes, FILTER_PARAMS],
        weights=[w.copy() for w, _ in layers],
        biases=[b.copy() for _, b in layers],
        feature_mean=np.zeros(FEATURE_DIM) if feature_mean is None else feature_mean,
        feature_std=np.ones(FEATURE_DIM) if feature_std is None else feature_std,
        parameterization=config.parameterization,
        config=config.model_dump(mode="json"),
        history=history or [],
    )


def init_model(config: Optional[TrainConfig] = None) -> PredictorModel:
    """Untrained model; predicts the identity filter for every input."""
    config = config or TrainConfig()
    rng = np.random.default_rng(config.seed)
    sizes = [FEATURE_DIM, *config.hidden_sizes, FILTER_PARAMS]
    layers = init_layers(sizes, identity_output(config.parameterization), rng)
    return build_model(layers, config)


class PredictorTrainer:
    """
    Trains the filter regressor with minibatch gradient descent.

    Items are prepared once (features, targets, a fixed foreground pixel sample per
    item); every gradient is exact backpropagation through both loss terms.
    """

    def __init__(self, config: TrainConfig, workers: Optional[int] = None) -> None:
        """
        Args:
            config: Hyperparameters
            workers: Pool size for item preparation
        """
        self.config = config
        self.workers = workers

    def _prepare_item(self, index: int, t: CompositeTriplet) -> LossContext:
        config = self.config
        real = t.require_real()
        fg = masked_stats(t.composite, t.mask)
        if config.parameterization == Parameterization.STATS:
            labels = stats_labels(fg, masked_stats(real, t.mask))
        else:
            labels = fit_ideal(t, config.eps).params

        pixels = t.composite.pixels[t.mask.bits]
        reference = real.pixels[t.mask.bits]
        if pixels.shape[0] > config.content_pixels:
            rng = np.random.default_rng([config.seed, index])
            keep = np.sort(
                rng.choice(pixels.shape[0], config.content_pixels, replace=False)
            )
            pixels, reference = pixels[keep], reference[keep]

        return LossContext(
            name=t.name,
            features=extract_features(t).values,
            labels=labels,
            pixels=pixels,
            reference=reference,
            fg=fg,
        )

    def prepare(self, dataset: Sequence[CompositeTriplet]) -> List[LossContext]:
        """Compute per-item training contexts in dataset order.

        Raises:
            EmptyDataset: If the dataset is empty
            MissingGroundTruth: If an item has no real image
        """
        if not dataset:
            raise EmptyDataset()
        return ordered_map(
            lambda pair: self._prepare_item(*pair), list(enumerate(dataset)), self.workers
        )

    def split(self, count: int) -> Tuple[np.ndarray, np.ndarray]:
        """Deterministic train/validation index split.

        A single item, or a zero validation fraction, validates on the training set.
        """
        order = np.random.default_rng(self.config.seed).permutation(count)
        n_val = int(round(count * self.config.validation_fraction))
        if count >= 2 and self.config.validation_fraction > 0:
            n_val = min(max(n_val, 1), count - 1)
        else:
            n_val = 0
        if n_val == 0:
            return order, order
        return order[n_val:], order[:n_val]

    def learning_rate(self, epoch: int) -> float:
        """Step size for a zero-based epoch index."""
        base = self.config.learning_rate
        if self.config.schedule == ScheduleType.CONSTANT:
            return base
        progress = epoch / self.config.epochs
        multiplier = 1.0
        for fraction, factor in STAGED_DROPS:
            if progress >= fraction:
                multiplier = factor
        return base * multiplier

    def _batch_loss(
        self,
        layers: Layers,
        inputs: np.ndarray,
        contexts: Sequence[LossContext],
        with_grad: bool,
    ) -> Tuple[float, float, Optional[Layers]]:
        config = self.config
        outputs, activations = forward(layers, inputs)
        grad_out = np.zeros_like(outputs) if with_grad else None
        total = labels = 0.0
        count = len(contexts)
        for i, ctx in enumerate(contexts):
            breakdown, grad = item_loss(
                outputs[i],
                ctx,
                config.alpha,
                config.norm,
                config.parameterization,
                config.eps,
                with_grad=with_grad,
            )
            total += breakdown.total
            labels += breakdown.labels
            if with_grad:
                grad_out[i] = grad / count
        total /= count
        labels /= count
        if not np.isfinite(total):
            raise NonFiniteLoss(f"{NonFiniteLoss.message}: {total}")
        grads = backward(layers, activations, grad_out) if with_grad else None
        return total, labels, grads

    def fit(self, dataset: Sequence[CompositeTriplet]) -> PredictorModel:
        """Train on ``dataset`` and return the best model by validation loss.

        Raises:
            EmptyDataset: If the dataset is empty
            NonFiniteLoss: If the total loss diverges
        """
        config = self.config
        contexts = self.prepare(dataset)
        train_idx, val_idx = self.split(len(contexts))
        features = np.stack([ctx.features for ctx in contexts])

        feature_mean = features[train_idx].mean(axis=0)
        feature_std = features[train_idx].std(axis=0)
        feature_std = np.where(feature_std < FEATURE_STD_FLOOR, 1.0, feature_std)
        inputs = (features - feature_mean) / feature_std

        rng = np.random.default_rng(config.seed)
        sizes = [FEATURE_DIM, *config.hidden_sizes, FILTER_PARAMS]
        layers = init_layers(sizes, identity_output(config.parameterization), rng)
        first_moment = [(np.zeros_like(w), np.zeros_like(b)) for w, b in layers]
        second_moment = [(np.zeros_like(w), np.zeros_like(b)) for w, b in layers]

        def evaluate(indices: np.ndarray) -> Tuple[float, float]:
            total, labels, _ = self._batch_loss(
                layers, inputs[indices], [contexts[i] for i in indices], with_grad=False
            )
            return total, labels

        train_total, train_labels = evaluate(train_idx)
        val_total, val_labels = evaluate(val_idx)
        history = [
            EpochRecord(
                epoch=0,
                learning_rate=0.0,
                train_total=train_total,
                train_labels=train_labels,
                val_total=val_total,
                val_labels=val_labels,
            )
        ]
        best_val, best_layers = val_total, [(w.copy(), b.copy()) for w, b in layers]
        logger.info(
            f"Starting training - Items: {len(contexts)}, Train: {len(train_idx)}, "
            f"Val: {len(val_idx)}, Initial val loss: {val_total:.6g}"
        )

        step = 0
        for epoch in range(config.epochs):
            lr = self.learning_rate(epoch)
            order = rng.permutation(train_idx)
            epoch_total = epoch_labels = 0.0
            for start in range(0, len(order), config.batch_size):
                batch = order[start : start + config.batch_size]
                total, labels, grads = self._batch_loss(
                    layers, inputs[batch], [contexts[i] for i in batch], with_grad=True
                )
                epoch_total += total * len(batch)
                epoch_labels += labels * len(batch)
                step += 1
                layers = self._update(
                    layers, grads, first_moment, second_moment, lr, step
                )

            val_total, val_labels = evaluate(val_idx)
            record = EpochRecord(
                epoch=epoch + 1,
                learning_rate=lr,
                train_total=epoch_total / len(order),
                train_labels=epoch_labels / len(order),
                val_total=val_total,
                val_labels=val_labels,
            )
            history.append(record)
            logger.debug(
                f"Epoch {record.epoch} - Train: {record.train_total:.6g}, "
                f"Val: {record.val_total:.6g}, LR: {lr:.3g}"
            )
            if val_total < best_val:
                best_val = val_total
                best_layers = [(w.copy(), b.copy()) for w, b in layers]

        log_performance_metric(
            logger, "predictor_best_val_loss", best_val, "loss", {"epochs": config.epochs}
        )
        return build_model(best_layers, config, feature_mean, feature_std, history)

    def _update(
        self,
        layers: Layers,
        grads: Layers,
        first_moment: Layers,
        second_moment: Layers,
        lr: float,
        step: int,
    ) -> Layers:
        if self.config.optimizer == OptimizerType.SGD:
            return [(w - lr * gw, b - lr * gb) for (w, b), (gw, gb) in zip(layers, grads)]

        updated: Layers = []
        correction1 = 1.0 - ADAM_BETA1**step
        correction2 = 1.0 - ADAM_BETA2**step
        for k, ((w, b), (gw, gb)) in enumerate(zip(layers, grads)):
            new_pair = []
            for j, (param, grad) in enumerate(((w, gw), (b, gb))):
                m = first_moment[k][j]
                v = second_moment[k][j]
                m *= ADAM_BETA1
                m += (1.0 - ADAM_BETA1) * grad
                v *= ADAM_BETA2
                v += (1.0 - ADAM_BETA2) * grad * grad
                step_dir = (m / correction1) / (np.sqrt(v / correction2) + ADAM_EPSILON)
                new_pair.append(param - lr * step_dir)
            updated.append((new_pair[0], new_pair[1]))
        return updated


def train(
    dataset: Sequence[CompositeTriplet],
    config: Optional[TrainConfig] = None,
    workers: Optional[int] = None,
) -> PredictorModel:
    """Train a predictor; see ``PredictorTrainer.fit``."""
    return PredictorTrainer(config or TrainConfig(), workers).fit(dataset)
