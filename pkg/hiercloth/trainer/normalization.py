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
Training coordinates. Feature vectors are dominated by the common translation of a triangle's
corners, and their scale follows the scene, so the optimizer works on centred and whitened
inputs and on centred, per-component scaled targets. The change of coordinates is affine on
both ends of the network, so a model trained in these coordinates folds back exactly into a
plain model on raw displacements.
"""
import logging

import numpy as np

from hiercloth.neural.model import MlpModel

logger = logging.getLogger(__name__)

# Variances below this fraction of the largest one are not amplified any further.
VARIANCE_FLOOR = 1e-6


class Normalizer:
    """
    normalized input  = (x - input_mean) @ input_basis
    normalized target = (g - target_mean) / target_scale
    """
    def __init__(self, input_mean: np.ndarray, input_basis: np.ndarray,
                 target_mean: np.ndarray, target_scale: np.ndarray):
        self.input_mean = np.asarray(input_mean, dtype=np.float64)
        self.input_basis = np.asarray(input_basis, dtype=np.float64)
        self.target_mean = np.asarray(target_mean, dtype=np.float64)
        self.target_scale = np.asarray(target_scale, dtype=np.float64)
        if np.any(self.target_scale <= 0):
            raise ValueError("Target scales must be positive.")

    @classmethod
    def identity(cls, input_dim: int, output_dim: int) -> 'Normalizer':
        return cls(np.zeros(input_dim), np.eye(input_dim), np.zeros(output_dim), np.ones(output_dim))

    @classmethod
    def fit(cls, inputs: np.ndarray, targets: np.ndarray, variance_floor: float = VARIANCE_FLOOR) -> 'Normalizer':
        """
        Input basis: eigenvectors of the input covariance, each divided by the square root of its
        variance. Directions without variance keep unit scale.
        """
        if len(inputs) == 0:
            raise ValueError("Can not fit a normalization to an empty dataset.")
        input_mean = inputs.mean(axis=0)
        centred = inputs - input_mean
        # einsum keeps the reduction order fixed, independent of the BLAS threading.
        covariance = np.einsum('ij,ik->jk', centred, centred) / len(inputs)
        variances, directions = np.linalg.eigh(covariance)
        top = variances[-1]
        if top > 0:
            input_basis = directions / np.sqrt(np.maximum(variances, top * variance_floor))
        else:
            input_basis = np.eye(inputs.shape[1])

        target_mean = targets.mean(axis=0)
        deviation = np.sqrt(np.einsum('ij,ij->j', targets - target_mean, targets - target_mean) / len(targets))
        top = np.max(deviation)
        if top > 0:
            target_scale = np.maximum(deviation, top * np.sqrt(variance_floor))
        else:
            target_scale = np.ones(targets.shape[1])
        normalizer = cls(input_mean, input_basis, target_mean, target_scale)
        logger.debug("Fitted %s.", normalizer)
        return normalizer

    def normalize_inputs(self, inputs: np.ndarray) -> np.ndarray:
        return (inputs - self.input_mean) @ self.input_basis

    def normalize_targets(self, targets: np.ndarray) -> np.ndarray:
        return (targets - self.target_mean) / self.target_scale

    def fold(self, model: MlpModel) -> MlpModel:
        """The model on raw displacements computing what `model` computes in training coordinates."""
        weights = [w.copy() for w in model.weights]
        biases = [b.copy() for b in model.biases]
        weights[0] = model.weights[0] @ self.input_basis.T
        biases[0] = model.biases[0] - weights[0] @ self.input_mean
        biases[-1] = self.target_scale * biases[-1] + self.target_mean
        weights[-1] = self.target_scale[:, None] * weights[-1]
        return MlpModel(model.level_index, weights, biases)

    def unfold(self, model: MlpModel) -> MlpModel:
        """Inverse of fold: a model on raw displacements expressed in training coordinates."""
        weights = [w.copy() for w in model.weights]
        biases = [b.copy() for b in model.biases]
        weights[-1] = weights[-1] / self.target_scale[:, None]
        biases[-1] = (biases[-1] - self.target_mean) / self.target_scale
        first = weights[0]
        biases[0] = biases[0] + first @ self.input_mean
        weights[0] = np.linalg.solve(self.input_basis, first.T).T
        return MlpModel(model.level_index, weights, biases)

    def __str__(self):
        spread = float(np.max(np.abs(self.input_basis)))
        return f"{self.__class__.__name__}<input gain {spread:.3g}, " \
               f"target scale {float(np.min(self.target_scale)):.3g}..{float(np.max(self.target_scale)):.3g}>"
