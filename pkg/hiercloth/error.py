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
from typing import Optional


class HierarchyError(Exception):
    """A topology error in a mesh or in the cloth hierarchy."""
    pass


class SolverDivergenceError(Exception):
    """The coarse solver produced non-finite positions."""
    def __init__(self, method: str, time: float):
        self.method = method
        self.time = time

    def __str__(self):
        return f"The {self.method} solver diverged (non-finite positions) at t={self.time:.6f}s."


class InferenceError(Exception):
    """A network produced non-finite output while inferring a finer level."""
    def __init__(self, level: int, triangle_count: int):
        self.level = level
        self.triangle_count = triangle_count

    def __str__(self):
        return f"Inference for level {self.level} produced non-finite output " \
               f"for {self.triangle_count} triangle(s)."


class CheckpointError(Exception):
    """Base class for errors while reading a binary model or dataset file."""
    pass


class CheckpointHeaderError(CheckpointError):
    """The file does not start with the expected magic string or the header is malformed."""
    pass


class CheckpointDimensionError(CheckpointError):
    """The dimensions recorded in the header do not match each other or the payload."""
    pass


class CheckpointTruncatedError(CheckpointError):
    """The file ended before the payload announced by its header."""
    pass


class DatasetFileError(CheckpointError):
    """Base class for dataset file errors, see the subclasses below."""
    pass


class DatasetHeaderError(DatasetFileError, CheckpointHeaderError):
    pass


class DatasetDimensionError(DatasetFileError, CheckpointDimensionError):
    pass


class DatasetTruncatedError(DatasetFileError, CheckpointTruncatedError):
    pass


class TrainingDivergedError(Exception):
    """The training loss became non-finite."""
    def __init__(self, epoch: int, last_checkpoint: Optional[str]):
        self.epoch = epoch
        self.last_checkpoint = last_checkpoint

    def __str__(self):
        return f"Training diverged (non-finite loss) in epoch {self.epoch}. " \
               f"Last good checkpoint: {self.last_checkpoint}"


class DatasetGenerationError(Exception):
    """A source simulation used for dataset generation failed."""
    def __init__(self, scene: str, cause: Exception):
        self.scene = scene
        self.cause = cause

    def __str__(self):
        return f"Dataset generation failed in scene '{self.scene}': {self.cause}"


class SimulationAbortedError(Exception):
    """A simulation run was aborted; carries the index of the failing frame."""
    def __init__(self, frame: int, cause: Exception):
        self.frame = frame
        self.cause = cause

    def __str__(self):
        return f"Simulation aborted in frame {self.frame}: {self.cause}"


class ConfigError(Exception):
    """Invalid or incomplete simulation configuration."""
    pass
