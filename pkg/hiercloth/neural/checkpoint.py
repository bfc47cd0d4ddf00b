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
Binary model checkpoints.

Layout (little-endian):
    "HCSNN1"                    6 bytes magic
    level index                 uint32
    layer count L               uint32
    L x (rows, cols)            uint32 pairs
    per layer: weights (rows x cols, row-major) then biases (rows), float32
"""
import logging
import struct

import numpy as np

from hiercloth.error import CheckpointHeaderError, CheckpointDimensionError, CheckpointTruncatedError
from hiercloth.neural.model import MlpModel

logger = logging.getLogger(__name__)

MODEL_MAGIC = b'HCSNN1'
MAX_LAYERS = 64
_FLOAT = np.dtype('<f4')


def serialize_model(model: MlpModel) -> bytes:
    """Parameters are rounded to float32 (round to nearest even)."""
    parts = [MODEL_MAGIC, struct.pack('<II', model.level_index, len(model.weights))]
    for w in model.weights:
        parts.append(struct.pack('<II', w.shape[0], w.shape[1]))
    for w, b in zip(model.weights, model.biases):
        parts.append(np.ascontiguousarray(w, dtype=_FLOAT).tobytes())
        parts.append(np.ascontiguousarray(b, dtype=_FLOAT).tobytes())
    return b''.join(parts)


def deserialize_model(data: bytes) -> MlpModel:
    """
    :raises: CheckpointHeaderError: Wrong magic or malformed header.
    :raises: CheckpointDimensionError: Layer dimensions that do not chain or do not match the payload size.
    :raises: CheckpointTruncatedError: The data ends before the announced payload.
    """
    if len(data) < len(MODEL_MAGIC):
        if MODEL_MAGIC.startswith(data):
            raise CheckpointTruncatedError("Model file ends inside the magic string.")
        raise CheckpointHeaderError("Not a model file (bad magic).")
    if data[:len(MODEL_MAGIC)] != MODEL_MAGIC:
        raise CheckpointHeaderError("Not a model file (bad magic).")
    offset = len(MODEL_MAGIC)
    if len(data) < offset + 8:
        raise CheckpointTruncatedError("Model file ends inside the header.")
    level_index, layer_count = struct.unpack_from('<II', data, offset)
    offset += 8
    if layer_count < 1 or layer_count > MAX_LAYERS:
        raise CheckpointHeaderError(f"Invalid layer count in model header: {layer_count}.")
    if len(data) < offset + 8 * layer_count:
        raise CheckpointTruncatedError("Model file ends inside the layer dimension table.")
    dims = [struct.unpack_from('<II', data, offset + 8 * k) for k in range(layer_count)]
    offset += 8 * layer_count
    for k, (rows, cols) in enumerate(dims):
        if rows == 0 or cols == 0:
            raise CheckpointDimensionError(f"Layer {k} has an empty dimension ({rows} x {cols}).")
        if k > 0 and cols != dims[k - 1][0]:
            raise CheckpointDimensionError(
                f"Layer {k} expects {cols} inputs, but layer {k - 1} has {dims[k - 1][0]} outputs."
            )
    expected = sum(rows * cols + rows for rows, cols in dims) * _FLOAT.itemsize
    available = len(data) - offset
    if available < expected:
        raise CheckpointTruncatedError(f"Model payload truncated: {available} of {expected} bytes.")
    if available > expected:
        raise CheckpointDimensionError(
            f"Model payload has {available} bytes, but the layer dimensions describe {expected}."
        )

    weights = []
    biases = []
    for rows, cols in dims:
        w = np.frombuffer(data, dtype=_FLOAT, count=rows * cols, offset=offset).reshape(rows, cols)
        offset += rows * cols * _FLOAT.itemsize
        b = np.frombuffer(data, dtype=_FLOAT, count=rows, offset=offset)
        offset += rows * _FLOAT.itemsize
        weights.append(w.astype(np.float64))
        biases.append(b.astype(np.float64))
    return MlpModel(level_index, weights, biases)


def save_model(model: MlpModel, path: str):
    with open(path, 'wb') as file:
        file.write(serialize_model(model))
    logger.debug("Saved %s to %s.", model, path)


def load_model(path: str) -> MlpModel:
    with open(path, 'rb') as file:
        data = file.read()
    model = deserialize_model(data)
    logger.debug("Loaded %s from %s.", model, path)
    return model
