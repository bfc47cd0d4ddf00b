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
import numpy as np
import scipy.sparse as sp

from hiercloth.solver.constraints import ConstraintSet


def constraint_energy(positions: np.ndarray, constraints: ConstraintSet) -> float:
    """U(x): sum of 1/2 k (|x_a - x_b| - L)^2 over all constraints."""
    if constraints.is_empty:
        return 0.0
    d = positions[constraints.a] - positions[constraints.b]
    stretch = np.linalg.norm(d, axis=1) - constraints.rest_length
    return float(0.5 * np.sum(constraints.stiffness * stretch * stretch))


def inertia_energy(positions: np.ndarray, predicted: np.ndarray, masses: np.ndarray, dt: float) -> float:
    """1 / (2 dt^2) |M^1/2 (x - x~)|^2"""
    diff = positions - predicted
    return float(np.sum(masses[:, None] * diff * diff) / (2.0 * dt * dt))


def energy(positions: np.ndarray, constraints: ConstraintSet, predicted: np.ndarray,
           masses: np.ndarray, dt: float) -> float:
    """The objective of the implicit step: inertia term plus constraint energy."""
    return inertia_energy(positions, predicted, masses, dt) + constraint_energy(positions, constraints)


def constraint_gradient(positions: np.ndarray, constraints: ConstraintSet) -> np.ndarray:
    """Gradient of U(x). The internal forces are its negative."""
    grad = np.zeros_like(positions)
    if constraints.is_empty:
        return grad
    d = positions[constraints.a] - positions[constraints.b]
    length = np.linalg.norm(d, axis=1)
    safe = np.where(length > 0, length, 1.0)
    coefficient = np.where(length > 0, constraints.stiffness * (length - constraints.rest_length) / safe, 0.0)
    contribution = coefficient[:, None] * d
    # D^T applied to the per-constraint gradients.
    return constraints.incidence.T @ contribution


def energy_gradient(positions: np.ndarray, constraints: ConstraintSet, predicted: np.ndarray,
                    masses: np.ndarray, dt: float) -> np.ndarray:
    return masses[:, None] * (positions - predicted) / (dt * dt) + constraint_gradient(positions, constraints)


def constraint_hessian(positions: np.ndarray, constraints: ConstraintSet, clamp=True) -> sp.csr_matrix:
    """
    The (3n, 3n) Hessian of U(x), degree of freedom 3 * i + c for coordinate c of vertex i.

    Per constraint the block is k (n n^T + s (I - n n^T)) with s = 1 - L / |d|.
    With clamp, s is clamped at zero so every block is positive semi-definite (compressed springs
    would otherwise contribute negative curvature).
    """
    n3 = 3 * constraints.vertex_count
    if constraints.is_empty:
        return sp.csr_matrix((n3, n3))
    d = positions[constraints.a] - positions[constraints.b]
    length = np.linalg.norm(d, axis=1)
    safe = np.where(length > 0, length, 1.0)
    direction = d / safe[:, None]
    s = 1.0 - constraints.rest_length / safe
    if clamp:
        s = np.maximum(s, 0.0)
    outer = direction[:, :, None] * direction[:, None, :]
    eye = np.eye(3)[None, :, :]
    blocks = constraints.stiffness[:, None, None] * (outer + s[:, None, None] * (eye - outer))

    rows = []
    cols = []
    data = []
    offsets = np.arange(3)
    for first, second, sign in ((constraints.a, constraints.a, 1.0), (constraints.b, constraints.b, 1.0),
                                (constraints.a, constraints.b, -1.0), (constraints.b, constraints.a, -1.0)):
        r = (3 * first[:, None, None] + offsets[None, :, None]) * np.ones((1, 1, 3), dtype=np.int64)
        c = (3 * second[:, None, None] + offsets[None, None, :]) * np.ones((1, 3, 1), dtype=np.int64)
        rows.append(r.reshape(-1))
        cols.append(c.reshape(-1))
        data.append((sign * blocks).reshape(-1))
    return sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))), shape=(n3, n3)
    ).tocsr()
