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
from typing import List, Tuple

import numpy as np

from hiercloth.neural.model import MlpModel, affine


def forward_batch(model: MlpModel, inputs: np.ndarray) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """
    Training forward pass. Returns the pre-activations z_k and activations a_k, a_0 being the input
    and a_L the network output. Every layer goes through the same affine kernel as inference, so a_L
    is bitwise equal to forward(model, inputs).
    """
    activations = [inputs]
    pre_activations = []
    last = len(model.weights) - 1
    a = inputs
    for k, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = affine(a, w, b)
        pre_activations.append(z)
        a = np.maximum(z, 0.0) if k != last else z
        activations.append(a)
    return pre_activations, activations


def _check_batch(inputs: np.ndarray, targets: np.ndarray):
    if len(inputs) == 0:
        raise ValueError("The batch must not be empty.")
    if inputs.shape[0] != targets.shape[0]:
        raise ValueError("Inputs and targets must have the same number of samples.")


def squared_error_sum(model: MlpModel, inputs: np.ndarray, targets: np.ndarray) -> float:
    """Sum over samples and components of (g - o)^2."""
    _, activations = forward_batch(model, inputs)
    diff = targets - activations[-1]
    return float(np.sum(diff * diff))


def mse_loss(model: MlpModel, inputs: np.ndarray, targets: np.ndarray) -> float:
    """The training surrogate: (1/n) sum_samples sum_components (g - o)^2, i.e. the square of rmse_loss."""
    _check_batch(inputs, targets)
    return squared_error_sum(model, inputs, targets) / len(inputs)


def rmse_loss(model: MlpModel, inputs: np.ndarray, targets: np.ndarray) -> float:
    """
    sqrt((1/n) sum_samples sum_components (g - o)^2) with n the number of samples (inferences).
    The 9 components of a sample are summed, not averaged.
    """
    return float(np.sqrt(mse_loss(model, inputs, targets)))


def backward(model: MlpModel, inputs: np.ndarray, targets: np.ndarray) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """
    Gradients of mse_loss with respect to every weight matrix and bias vector, by reverse mode
    differentiation. Returns (weight gradients, bias gradients) in layer order.
    """
    _check_batch(inputs, targets)
    pre_activations, activations = forward_batch(model, inputs)
    n = len(inputs)
    delta = 2.0 * (activations[-1] - targets) / n
    weight_grads = [None] * len(model.weights)
    bias_grads = [None] * len(model.weights)
    for k in range(len(model.weights) - 1, -1, -1):
        weight_grads[k] = delta.T @ activations[k]
        bias_grads[k] = delta.sum(axis=0)
        if k > 0:
            delta = (delta @ model.weights[k]) * (pre_activations[k - 1] > 0)
    return weight_grads, bias_grads
