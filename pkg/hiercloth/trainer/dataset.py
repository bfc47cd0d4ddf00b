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
"""
Training data: (input feature vector, ground-truth output vector) pairs for one finer level.

Dataset file layout (little-endian):
    "HCSDS1"            6 bytes magic
    level index         uint32
    sample count n      uint64
    n records of 18 float32 values: 9 input components, then 9 target components
"""
import logging
import struct
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence, Optional

import numpy as np

from hiercloth.error import DatasetHeaderError, DatasetTruncatedError, DatasetDimensionError, \
    SimulationAbortedError, DatasetGenerationError
from hiercloth.harness.config import SimConfig
from hiercloth.harness.runner import run_conventional
from hiercloth.harness.scenes import ClothScene
from hiercloth.mesh.hierarchy import ClothHierarchy
from hiercloth.neural.inference import level_features
from hiercloth.neural.model import FEATURE_SIZE, OUTPUT_SIZE
from hiercloth.solver.stepper import SolverMethod
from hiercloth.util import make_rng, f, _

logger = logging.getLogger(__name__)

DATASET_MAGIC = b'HCSDS1'
_HEADER = struct.Struct('<IQ')
_FLOAT = np.dtype('<f4')
RECORD_SIZE = FEATURE_SIZE + OUTPUT_SIZE


class TrainingSample:
    """One inference worth of training data."""
    def __init__(self, level: int, input: np.ndarray, target: np.ndarray):
        self.level = level
        self.input = np.asarray(input, dtype=np.float64).reshape(FEATURE_SIZE)
        self.target = np.asarray(target, dtype=np.float64).reshape(OUTPUT_SIZE)
        if not np.all(np.isfinite(self.input)) or not np.all(np.isfinite(self.target)):
            raise ValueError(_("Training samples must be finite."))

    def __eq__(self, other):
        if not isinstance(other, TrainingSample):
            return False
        return self.level == other.level and np.array_equal(self.input, other.input) and \
            np.array_equal(self.target, other.target)

    def __str__(self):
        return f"{self.__class__.__name__}<l{self.level}>"


class Dataset:
    """
    The samples of one target level, stored as two (n, 9) arrays.
    provenance lists the source scenes and seed; it is not part of the dataset file.
    """
    def __init__(self, level: int, inputs: np.ndarray, targets: np.ndarray, provenance: Sequence[str] = ()):
        inputs = np.asarray(inputs, dtype=np.float64).reshape(-1, FEATURE_SIZE)
        targets = np.asarray(targets, dtype=np.float64).reshape(-1, OUTPUT_SIZE)
        if len(inputs) != len(targets):
            raise ValueError(f(_("Got {len(inputs)} inputs but {len(targets)} targets.")))
        if level < 1:
            raise ValueError(f(_("Datasets target a finer level (>= 1), got {level}.")))
        if not np.all(np.isfinite(inputs)) or not np.all(np.isfinite(targets)):
            raise ValueError(_("Training samples must be finite."))
        self.level = int(level)
        self.inputs = inputs
        self.targets = targets
        self.provenance: List[str] = list(provenance)

    @classmethod
    def from_samples(cls, level: int, samples: Sequence[TrainingSample], provenance: Sequence[str] = ()) -> 'Dataset':
        for sample in samples:
            if sample.level != level:
                raise ValueError(f(_("Sample for level {sample.level} in a dataset for level {level}.")))
        inputs = np.array([s.input for s in samples]).reshape(-1, FEATURE_SIZE)
        targets = np.array([s.target for s in samples]).reshape(-1, OUTPUT_SIZE)
        return cls(level, inputs, targets, provenance)

    @classmethod
    def concatenate(cls, datasets: Sequence['Dataset']) -> 'Dataset':
        if len(datasets) < 1:
            raise ValueError(_("Nothing to concatenate."))
        level = datasets[0].level
        if any(d.level != level for d in datasets):
            raise ValueError(_("Can only concatenate datasets of the same level."))
        provenance = [p for d in datasets for p in d.provenance]
        return cls(level, np.concatenate([d.inputs for d in datasets]),
                   np.concatenate([d.targets for d in datasets]), provenance)

    @property
    def samples(self) -> List[TrainingSample]:
        return [self[i] for i in range(len(self))]

    def subset(self, indices) -> 'Dataset':
        return Dataset(self.level, self.inputs[indices], self.targets[indices], self.provenance)

    def __getitem__(self, index: int) -> TrainingSample:
        return TrainingSample(self.level, self.inputs[index], self.targets[index])

    def __len__(self):
        return len(self.inputs)

    def __str__(self):
        return f"{self.__class__.__name__}<l{self.level}, n={len(self)}>"

    def __repr__(self):
        return str(self)


def frame_samples(hierarchy: ClothHierarchy, level: int, positions: np.ndarray):
    """
    The (inputs, targets) of one frame. positions are the positions of level `level` or any finer
    level; the inputs are the level-(level-1) triangle displacements, the targets the
    displacements of the midpoints each triangle spawns, in output slot order.
    """
    coarse = hierarchy.levels[level - 1]
    inputs = level_features(coarse.triangles, positions[:coarse.vertex_count], coarse.vertices)
    midpoints = hierarchy.triangle_midpoints[level - 1]
    displacement = positions[midpoints] - hierarchy.rest_positions(level)[midpoints]
    return inputs, displacement.reshape(coarse.triangle_count, OUTPUT_SIZE)


def select_frames(available: int, count: int, seed: int, scene_index: int) -> np.ndarray:
    """Ascending indices of the frames to sample; all frames if count >= available."""
    if count >= available:
        return np.arange(available)
    rng = make_rng(seed, scene_index)
    return np.sort(rng.choice(available, size=count, replace=False))


def _scene_dataset(index: int, config: SimConfig, level: int, frames_per_scene: int, seed: int) -> Dataset:
    scene = ClothScene(config)
    hierarchy = scene.hierarchy
    if not 1 <= level <= hierarchy.finer_levels:
        raise ValueError(f(_("Scene {index} ({config.scene}) has no level {level}; "
                             "it has {hierarchy.finer_levels} finer level(s).")))
    finest = hierarchy.finer_levels
    logger.debug("Dataset scene %d: %s, simulating %d frames on level %d.", index, config, config.frames, finest)
    try:
        result = run_conventional(config, finest, SolverMethod.ADMM, scene, export=False)
    except SimulationAbortedError as e:
        raise DatasetGenerationError(f"{config.scene}#{index}", e) from e
    chosen = select_frames(len(result), frames_per_scene, seed, index)
    inputs = []
    targets = []
    for frame in chosen:
        frame_inputs, frame_targets = frame_samples(hierarchy, level, result.frames[frame][0])
        inputs.append(frame_inputs)
        targets.append(frame_targets)
    provenance = f"{config.scene}#{index}:{config.nx}x{config.ny}:N={finest}:frames={len(chosen)}:seed={seed}"
    return Dataset(level, np.concatenate(inputs), np.concatenate(targets), [provenance])


def generate_dataset(scenes: Sequence[SimConfig], level: int, frames_per_scene: int, seed: int,
                     workers: int = 1) -> Dataset:
    """
    Runs the conventional ADMM simulation of every scene on its finest level and samples
    frames_per_scene of its frames (chosen by seed). Every sampled frame contributes one sample
    per level-(level-1) triangle. Scenes may run in parallel; they are merged in list order.

    :raises: DatasetGenerationError: If a source simulation diverges.
    """
    if len(scenes) < 1:
        raise ValueError(_("At least one scene is needed to generate a dataset."))
    if frames_per_scene < 1:
        raise ValueError(f(_("frames_per_scene must be at least 1 (got {frames_per_scene}).")))

    def run(item):
        index, config = item
        return _scene_dataset(index, config, level, frames_per_scene, seed)

    items = list(enumerate(scenes))
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
            parts = list(pool.map(run, items))
    else:
        parts = [run(item) for item in items]
    dataset = Dataset.concatenate(parts)
    logger.info("Generated %s from %d scene(s).", dataset, len(scenes))
    return dataset


def serialize_dataset(dataset: Dataset) -> bytes:
    records = np.concatenate([dataset.inputs, dataset.targets], axis=1).astype(_FLOAT)
    return DATASET_MAGIC + _HEADER.pack(dataset.level, len(dataset)) + records.tobytes()


def deserialize_dataset(data: bytes) -> Dataset:
    """
    :raises: DatasetHeaderError: Wrong magic or an invalid level.
    :raises: DatasetTruncatedError: The data ends before the announced records.
    :raises: DatasetDimensionError: The payload holds more than the announced records or a partial record.
    """
    if data[:len(DATASET_MAGIC)] != DATASET_MAGIC:
        if len(data) < len(DATASET_MAGIC) and DATASET_MAGIC.startswith(data):
            raise DatasetTruncatedError("Dataset file ends inside the magic string.")
        raise DatasetHeaderError("Not a dataset file (bad magic).")
    offset = len(DATASET_MAGIC)
    if len(data) < offset + _HEADER.size:
        raise DatasetTruncatedError("Dataset file ends inside the header.")
    level, count = _HEADER.unpack_from(data, offset)
    offset += _HEADER.size
    if level < 1:
        raise DatasetHeaderError(f"Invalid target level in dataset header: {level}.")
    record_bytes = RECORD_SIZE * _FLOAT.itemsize
    available = len(data) - offset
    if available < count * record_bytes:
        raise DatasetTruncatedError(f"Dataset payload truncated: {available} of {count * record_bytes} bytes.")
    if available != count * record_bytes:
        raise DatasetDimensionError(f"Dataset payload has {available} bytes, "
                                    f"but the header announces {count} records of {record_bytes} bytes.")
    if count == 0:
        records = np.zeros((0, RECORD_SIZE))
    else:
        records = np.frombuffer(data, dtype=_FLOAT, count=count * RECORD_SIZE, offset=offset)
        records = records.reshape(count, RECORD_SIZE).astype(np.float64)
    return Dataset(level, records[:, :FEATURE_SIZE], records[:, FEATURE_SIZE:])


def save_dataset(dataset: Dataset, path: str):
    with open(path, 'wb') as file:
        file.write(serialize_dataset(dataset))
    logger.debug("Saved %s to %s.", dataset, path)


def load_dataset(path: str) -> Dataset:
    with open(path, 'rb') as file:
        data = file.read()
    dataset = deserialize_dataset(data)
    logger.debug("Loaded %s from %s.", dataset, path)
    return dataset
