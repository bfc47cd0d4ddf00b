#  MIT License
#
#  Copyright (c) 2025-2026 The hiercloth Contributors
#
#  Permission is hereby granted, free of charge, to any person obtaining a copy
#  of this software and associated documentation files (the "Software"), to deal
#  in the Software without restriction, including without limitation the rights
#  to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
#  copies of the Software, and to permit persons to whom the Software is
#  furnished to do so, subject to the following conditions:
#
#  The above copyright notice and this permission notice shall be included in all
#  copies or substantial portions of the Software.
#
#  THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
#  IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
#  FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
#  AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
#  LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
#  OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
#  SOFTWARE.
#
import csv
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from hiercloth import MODEL_EXT
from hiercloth.error import TrainingDivergedError
from hiercloth.neural.checkpoint import save_model
from hiercloth.neural.model import MlpModel, DEFAULT_HIDDEN
from hiercloth.trainer.adam import AdamState, adam_step
from hiercloth.trainer.backprop import backward, rmse_loss
from hiercloth.trainer.dataset import Dataset
from hiercloth.trainer.normalization import Normalizer
from hiercloth.util import make_rng, split_evenly, open_utf8, f, _

logger = logging.getLogger(__name__)

DEFAULT_EPOCHS = 500
DEFAULT_BATCH_SIZE = 256
DEFAULT_LEARNING_RATE = 1e-3
DEFAULT_CHECKPOINT_EPOCHS = (100, 1500, 3000, 5000)
LOSS_CSV_HEADER = ['epoch', 'loss']
CHECKPOINT_FILE_PATTERN = 'model_l%d_e%05d' + MODEL_EXT
# Stream of make_rng used for the epoch shuffles, apart from the weight initialization.
SHUFFLE_STREAM = 1

LossLog = List[Tuple[int, float]]


class TrainConfig:
    """
    Hyper-parameters of one training run.

    hidden lists the hidden layer widths; the default (32, 32) gives three fully connected
    layers 9 -> 32 -> 32 -> 9. checkpoint_epochs defaults to those of 100, 1500, 3000 and 5000
    not above epochs, plus the last epoch.
    """
    def __init__(self, epochs: int = DEFAULT_EPOCHS, batch_size: int = DEFAULT_BATCH_SIZE,
                 learning_rate: float = DEFAULT_LEARNING_RATE, beta1: float = 0.9, beta2: float = 0.999,
                 epsilon: float = 1e-8, seed: int = 0, hidden: Sequence[int] = DEFAULT_HIDDEN,
                 checkpoint_epochs: Optional[Sequence[int]] = None, workers: int = 1, normalize: bool = True):
        if epochs < 1:
            raise ValueError(f(_("epochs must be at least 1 (got {epochs}).")))
        if batch_size < 1:
            raise ValueError(f(_("batch_size must be at least 1 (got {batch_size}).")))
        if not learning_rate > 0:
            raise ValueError(f(_("The learning rate must be positive (got {learning_rate}).")))
        if not 0 <= beta1 < 1 or not 0 <= beta2 < 1:
            raise ValueError(f(_("Adam betas must be in [0, 1) (got {beta1}, {beta2}).")))
        if not epsilon > 0:
            raise ValueError(_("Adam epsilon must be positive."))
        if any(width < 1 for width in hidden):
            raise ValueError(_("Hidden layer widths must be at least 1."))
        if workers < 1:
            raise ValueError(_("workers must be at least 1."))
        if checkpoint_epochs is None:
            checkpoint_epochs = [e for e in DEFAULT_CHECKPOINT_EPOCHS if e <= epochs] + [epochs]
        checkpoint_epochs = sorted(set(int(e) for e in checkpoint_epochs))
        if len(checkpoint_epochs) < 1 or checkpoint_epochs[0] < 1 or checkpoint_epochs[-1] > epochs:
            raise ValueError(f(_("Checkpoint epochs must lie in [1, {epochs}].")))
        self.epochs = int(epochs)
        self.batch_size = int(batch_size)
        self.learning_rate = float(learning_rate)
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.epsilon = float(epsilon)
        self.seed = int(seed)
        self.hidden = tuple(int(width) for width in hidden)
        self.checkpoint_epochs: List[int] = checkpoint_epochs
        # > 1 splits every batch gradient into chunks reduced in a fixed order.
        self.workers = int(workers)
        # Train in centred, whitened coordinates (see normalization.py).
        self.normalize = bool(normalize)

    @property
    def depth(self) -> int:
        """Number of fully connected layers."""
        return len(self.hidden) + 1

    def with_architecture(self, hidden: Sequence[int]) -> 'TrainConfig':
        return TrainConfig(self.epochs, self.batch_size, self.learning_rate, self.beta1, self.beta2,
                           self.epsilon, self.seed, hidden, self.checkpoint_epochs, self.workers, self.normalize)

    def __str__(self):
        return f"{self.__class__.__name__}<epochs={self.epochs}, batch={self.batch_size}, " \
               f"lr={self.learning_rate}, hidden={list(self.hidden)}, seed={self.seed}>"


def batch_gradients(model: MlpModel, inputs: np.ndarray, targets: np.ndarray, workers: int = 1,
                    executor: Optional[ThreadPoolExecutor] = None) -> List[np.ndarray]:
    """
    Gradients of the mean squared error of the batch, in model.parameters() order. With more than
    one worker the batch is split into chunks whose gradients are weighted by their share of the
    batch and summed in chunk order.
    """
    chunks = split_evenly(len(inputs), workers)
    if len(chunks) <= 1 or executor is None:
        weight_grads, bias_grads = backward(model, inputs, targets)
        return _interleave(weight_grads, bias_grads)

    def run_chunk(bounds):
        start, stop = bounds
        return backward(model, inputs[start:stop], targets[start:stop])

    results = list(executor.map(run_chunk, chunks))
    total = None
    for (start, stop), (weight_grads, bias_grads) in zip(chunks, results):
        share = (stop - start) / len(inputs)
        part = [g * share for g in _interleave(weight_grads, bias_grads)]
        total = part if total is None else [a + b for a, b in zip(total, part)]
    return total


def _interleave(weight_grads, bias_grads) -> List[np.ndarray]:
    result = []
    for w, b in zip(weight_grads, bias_grads):
        result += [w, b]
    return result


def write_loss_log(path: str, losses: LossLog):
    with open_utf8(path, 'w', newline='') as file:
        writer = csv.writer(file, lineterminator='\n')
        writer.writerow(LOSS_CSV_HEADER)
        for epoch, loss in losses:
            writer.writerow([epoch, repr(loss)])


def read_loss_log(path: str) -> LossLog:
    with open_utf8(path, 'r', newline='') as file:
        reader = csv.reader(file)
        header = next(reader)
        if header != LOSS_CSV_HEADER:
            raise ValueError(f"{path} is not a loss log.")
        return [(int(epoch), float(loss)) for epoch, loss in reader]


def train(dataset: Dataset, config: TrainConfig, output_directory: Optional[str] = None,
          initial_model: Optional[MlpModel] = None) -> Tuple[MlpModel, LossLog]:
    """
    Trains the model of dataset.level with Adam on the mean squared error, using mini-batches of
    a seeded shuffle of the dataset every epoch.

    Unless config.normalize is off the optimizer runs on the normalized dataset (see Normalizer).
    Checkpoints, the loss log and the returned model always refer to the model on raw
    displacements; initial_model is given in those terms as well.

    At every checkpoint epoch the loss of the whole dataset is measured on the model with its
    parameters rounded to float32, which is exactly what the checkpoint file stores. If
    output_directory is set, the checkpoint is written there and the loss log is kept in
    `loss_l{level}.csv`.

    :raises: TrainingDivergedError: If the loss becomes non-finite. Checkpoints written before stay.
    """
    if len(dataset) == 0:
        raise ValueError(_("Can not train on an empty dataset."))
    level = dataset.level
    if config.normalize:
        normalizer = Normalizer.fit(dataset.inputs, dataset.targets)
    else:
        normalizer = Normalizer.identity(dataset.inputs.shape[1], dataset.targets.shape[1])
    inputs = normalizer.normalize_inputs(dataset.inputs)
    targets = normalizer.normalize_targets(dataset.targets)
    if initial_model is None:
        model = MlpModel.create(level, config.hidden, seed=config.seed)
    elif config.normalize:
        model = normalizer.unfold(initial_model)
    else:
        model = initial_model.copy()
    model.level_index = level
    parameters = model.parameters()
    state = AdamState(parameters)
    rng = make_rng(config.seed, SHUFFLE_STREAM)
    checkpoints = set(config.checkpoint_epochs)
    losses: LossLog = []
    last_checkpoint = None
    log_path = None
    if output_directory is not None:
        os.makedirs(output_directory, exist_ok=True)
        log_path = os.path.join(output_directory, f"loss_l{level}.csv")
    n = len(dataset)
    logger.debug("Training level %d on %d samples: %s", level, n, config)

    executor = ThreadPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
    try:
        for epoch in range(1, config.epochs + 1):
            order = rng.permutation(n)
            for start in range(0, n, config.batch_size):
                batch = order[start:start + config.batch_size]
                gradients = batch_gradients(model, inputs[batch], targets[batch], config.workers, executor)
                adam_step(parameters, gradients, state, config.learning_rate,
                          config.beta1, config.beta2, config.epsilon)
            finite = model.is_finite()
            if epoch in checkpoints or not finite:
                stored = normalizer.fold(model).rounded() if finite else None
                loss = rmse_loss(stored, dataset.inputs, dataset.targets) if finite else float('nan')
                if not np.isfinite(loss):
                    if log_path is not None:
                        write_loss_log(log_path, losses)
                    raise TrainingDivergedError(epoch, last_checkpoint)
                losses.append((epoch, loss))
                logger.info("Level %d, epoch %d: loss %.6e", level, epoch, loss)
                if output_directory is not None:
                    last_checkpoint = os.path.join(output_directory, CHECKPOINT_FILE_PATTERN % (level, epoch))
                    save_model(stored, last_checkpoint)
                    write_loss_log(log_path, losses)
    finally:
        if executor is not None:
            executor.shutdown()
    return normalizer.fold(model), losses
