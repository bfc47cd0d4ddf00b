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
from typing import List

import numpy as np


class AdamState:
    """First and second moment estimates per parameter array, plus the step counter."""
    def __init__(self, parameters: List[np.ndarray]):
        self.m: List[np.ndarray] = [np.zeros_like(p) for p in parameters]
        self.v: List[np.ndarray] = [np.zeros_like(p) for p in parameters]
        self.t = 0


def adam_step(parameters: List[np.ndarray], gradients: List[np.ndarray], state: AdamState,
              learning_rate: float, beta1: float = 0.9, beta2: float = 0.999, epsilon: float = 1e-8):
    """
    One bias-corrected Adam update, applied in place to every parameter array:

        m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
        p <- p - lr * m_hat / (sqrt(v_hat) + eps)
    """
    if len(parameters) != len(gradients) or len(parameters) != len(state.m):
        raise ValueError("Parameters, gradients and optimizer state must have the same layout.")
    state.t += 1
    correction1 = 1.0 - beta1 ** state.t
    correction2 = 1.0 - beta2 ** state.t
    for p, g, m, v in zip(parameters, gradients, state.m, state.v):
        if p.shape != g.shape or p.shape != m.shape:
            raise ValueError("Parameter and gradient shapes differ.")
        m *= beta1
        m += (1.0 - beta1) * g
        v *= beta2
        v += (1.0 - beta2) * g * g
        p -= learning_rate * (m / correction1) / (np.sqrt(v / correction2) + epsilon)
