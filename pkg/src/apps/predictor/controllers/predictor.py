"""Commands: train, predict."""

import logging
from pathlib import Path
from typing import Annotated, Optional

import typer
from typer import Typer

from apps.dataset.services import load_triplet, scan_dataset
from apps.imaging.services import load_image, load_mask
from apps.oracle.schemas import CompositeTriplet
from apps.predictor.constants import PredictorMessage
from apps.predictor.schemas import TrainConfig
from apps.predictor.services import load_model, predict, save_model, train
from apps.transport.constants import TransportMessage
from apps.transport.services import save_filter
from config import settings
from core.constants import LossNorm, OptimizerType, Parameterization, ScheduleType, Split
from core.utils import ColoredOutput, console, ordered_map
from core.utils.options import (
    DatasetOption,
    EpsOption,
    SeedOption,
    ThreadsOption,
    ThresholdOption,
)

router = Typer()

logger = logging.getLogger(__name__)


@router.command("train", help="Train the filter predictor on a dataset with reals")
def train_command(
    dataset: DatasetOption,
    output: Annotated[Path, typer.Option("--output", help="Model file (.json)")],
    split: Annotated[
        Split, typer.Option("--split", help="Items to train on")
    ] = Split.TRAIN,
    epochs: Annotated[int, typer.Option("--epochs", min=1)] = 100,
    learning_rate: Annotated[float, typer.Option("--lr", min=0.0)] = 1e-3,
    batch_size: Annotated[int, typer.Option("--batch-size", min=1)] = 16,
    alpha: Annotated[
        Optional[float],
        typer.Option("--alpha", min=0.0, help="Content loss weight [default: 10]"),
    ] = None,
    norm: Annotated[LossNorm, typer.Option("--norm")] = LossNorm.L1,
    parameterization: Annotated[
        Parameterization, typer.Option("--parameterization")
    ] = Parameterization.FILTER,
    optimizer: Annotated[OptimizerType, typer.Option("--optimizer")] = OptimizerType.ADAM,
    schedule: Annotated[ScheduleType, typer.Option("--schedule")] = ScheduleType.STAGED,
    eps: EpsOption = None,
    seed: SeedOption = None,
    threads: ThreadsOption = 0,
    threshold: ThresholdOption = None,
) -> None:
    """
    Fit the predictor against ideal filters and save weights, normalization
    and per-epoch history.
    """
    config = TrainConfig(
        epochs=epochs,
        learning_rate=learning_rate,
        batch_size=batch_size,
        alpha=settings.CONTENT_ALPHA if alpha is None else alpha,
        norm=norm,
        seed=settings.SEED if seed is None else seed,
        parameterization=parameterization,
        optimizer=optimizer,
        schedule=schedule,
        eps=settings.RIDGE_EPS if eps is None else eps,
    )
    index = scan_dataset(dataset, split)
    triplets = ordered_map(lambda e: load_triplet(e, threshold), index.entries, threads)
    logger.info(f"Loaded training set - Items: {len(triplets)}, Split: {split}")

    model = train(triplets, config, threads)
    save_model(model, output)
    last = model.history[-1] if model.history else None
    if last is not None:
        console.print(
            ColoredOutput.info(
                f"{PredictorMessage.TRAINING_DONE} - train loss {last.train_total:.6g}, "
                f"validation loss {last.val_total:.6g}"
            )
        )
    console.print(ColoredOutput.success(f"{PredictorMessage.MODEL_SAVED}: {output}"))


@router.command("predict", help="Predict a harmonizing filter for a composite")
def predict_command(
    model_path: Annotated[
        Path,
        typer.Option("--model", exists=True, dir_okay=False, help="Predictor model"),
    ],
    composite: Annotated[Path, typer.Option("--composite", exists=True, dir_okay=False)],
    mask: Annotated[Path, typer.Option("--mask", exists=True, dir_okay=False)],
    output: Annotated[Path, typer.Option("--output", help="Filter file (.json/.mklf)")],
    eps: EpsOption = None,
    threshold: ThresholdOption = None,
) -> None:
    """
    Run one forward pass and write the resulting filter.
    """
    model = load_model(model_path)
    t = CompositeTriplet(
        composite=load_image(composite),
        mask=load_mask(mask, threshold),
        name=composite.stem,
    )
    save_filter(predict(model, t, eps), output)
    console.print(ColoredOutput.success(f"{TransportMessage.FILTER_SAVED}: {output}"))
