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
import logging
from typing import List, Sequence, Optional

import numpy as np

from hiercloth.util import make_rng, f, _

logger = logging.getLogger(__name__)

FEATURE_SIZE = 9
OUTPUT_SIZE = 9
DEFAULT_HIDDEN = (32, 32)


class MlpModel:
    """
    A fully connected network for one finer level: input -> hidden... -> output, with a
    rectifier after every layer except the last.

    weights[k] has shape (rows, cols) = (out_dim, in_dim), layer k computes W x + b.
    Parameters are kept in float64.
    """
    def __init__(self, level_index: int, weights: Sequence[np.ndarray], biases: Sequence[np.ndarray]):
        if len(weights) < 1 or len(weights) != len(biases):
            raise ValueError(_("A model needs at least one layer and one bias vector per layer."))
        self.level_index = int(level_index)
        self.weights: List[np.ndarray] = [np.array(w, dtype=np.float64, ndmin=2) for w in weights]
        self.biases: List[np.ndarray] = [np.array(b, dtype=np.float64).reshape(-1) for b in biases]
        for k, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape[0] != len(b):
                raise ValueError(f(_("Layer {k}: bias length {len(b)} does not match {w.shape[0]} rows.")))
            if k > 0 and w.shape[1] != self.weights[k - 1].shape[0]:
                raise ValueError(f(_("Layer {k}: {w.shape[1]} inputs do not chain to the "
                                     "previous layer's outputs.")))

    @classmethod
    def create(cls, level_index: int, hidden: Sequence[int] = DEFAULT_HIDDEN, seed: int = 0,
               input_dim: int = FEATURE_SIZE, output_dim: int = OUTPUT_SIZE) -> 'MlpModel':
        """
        Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero, drawn from the given seed.
        """
        dims = [input_dim, *hidden, output_dim]
        rng = make_rng(seed)
        weights = []
        biases = []
        for fan_in, fan_out in zip(dims[:-1], dims[1:]):
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
            biases.append(np.zeros(fan_out))
        return cls(level_index, weights, biases)

    @classmethod
    def zeros(cls, level_index: int, hidden: Sequence[int] = DEFAULT_HIDDEN,
              input_dim: int = FEATURE_SIZE, output_dim: int = OUTPUT_SIZE) -> 'MlpModel':
        dims = [input_dim, *hidden, output_dim]
        return cls(level_index, [np.zeros((o, i)) for i, o in zip(dims[:-1], dims[1:])],
                   [np.zeros(o) for o in dims[1:]])

    @property
    def layer_dims(self) -> List[int]:
        return [self.weights[0].shape[1]] + [w.shape[0] for w in self.weights]

    @property
    def depth(self) -> int:
        """Number of fully connected layers."""
        return len(self.weights)

    def parameters(self) -> List[np.ndarray]:
        """All parameter arrays in storage order: W_1, b_1, W_2, b_2, ..."""
        result = []
        for w, b in zip(self.weights, self.biases):
            result += [w, b]
        return result

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(p)) for p in self.parameters())

    def copy(self) -> 'MlpModel':
        return MlpModel(self.level_index, [w.copy() for w in self.weights], [b.copy() for b in self.biases])

    def rounded(self) -> 'MlpModel':
        """A copy with every parameter rounded to the nearest float32 value, as stored in checkpoints."""
        return MlpModel(self.level_index,
                        [w.astype(np.float32).astype(np.float64) for w in self.weights],
                        [b.astype(np.float32).astype(np.float64) for b in self.biases])

    def __eq__(self, other):
        if not isinstance(other, MlpModel):
            return False
        return self.level_index == other.level_index and len(self.weights) == len(other.weights) and \
            all(a.shape == b.shape and np.array_equal(a, b) for a, b in zip(self.parameters(), other.parameters()))

    def __str__(self):
        dims = '->'.join(str(d) for d in self.layer_dims)
        return f"{self.__class__.__name__}<l{self.level_index}: {dims}>"

    def __repr__(self):
        return str(self)


def affine(inputs: np.ndarray, weight: np.ndarray, bias: np.ndarray) -> np.ndarray:
    """
    W x + b for a batch of row vectors, accumulated over the input dimension in ascending order.
    Every output element is computed by the same sequence of float operations no matter how the
    batch is split, which keeps chunked parallel inference bitwise identical to a single pass.
    """
    out = np.empty((inputs.shape[0], weight.shape[0]))
    out[:] = bias
    for k in range(weight.shape[1]):
        out += inputs[:, k, None] * weight[None, :, k]
    return out


def forward(model: MlpModel, inputs: np.ndarray) -> np.ndarray:
    """
    Evaluates the network on one input vector or a (T, in_dim) batch. Deterministic and pure.

    :raises: ValueError: If the input size does not match the model's input dimension.
    """
    x = np.asarray(inputs, dtype=np.float64)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    if x.shape[1] != model.layer_dims[0]:
        raise ValueError(f"Input size {x.shape[1]} does not match model input size {model.layer_dims[0]}.")
    last = len(model.weights) - 1
    for k, (w, b) in enumerate(zip(model.weights, model.biases)):
        x = affine(x, w, b)
        if k != last:
            x = np.maximum(x, 0.0)
    return x[0] if single else x
