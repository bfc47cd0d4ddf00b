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
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from hiercloth.error import SolverDivergenceError
from hiercloth.solver.constraints import ConstraintSet
from hiercloth.solver.data_types import SolverState, SolverParams
from hiercloth.solver.energy import energy

logger = logging.getLogger(__name__)


def project_distance(y: np.ndarray, rest_length: np.ndarray, stiffness: np.ndarray,
                     weight: np.ndarray) -> np.ndarray:
    """
    Local ADMM step for distance constraints: the minimizer over z of
    1/2 k (|z| - L)^2 + 1/2 w^2 |z - y|^2, which keeps the direction of y and sets
    |z| = (k L + w^2 |y|) / (k + w^2).
    All constraints are independent; the rows are written to disjoint slots.
    """
    length = np.linalg.norm(y, axis=1)
    w2 = weight * weight
    target = (stiffness * rest_length + w2 * length) / (stiffness + w2)
    scale = np.where(length > 0, target / np.where(length > 0, length, 1.0), 0.0)
    return scale[:, None] * y


class AdmmSystem:
    """
    The prefactorized global step matrix A = M / dt^2 + D^T W^2 D, restricted to the free vertices.
    Valid as long as topology, masses, pins, stiffness and dt do not change.
    The matrix is the same for all three coordinates, so one n x n factorization serves all of them.
    """
    def __init__(self, constraints: ConstraintSet, masses: np.ndarray, pinned: np.ndarray, dt: float):
        n = len(masses)
        self.dt = dt
        self.vertex_count = n
        free = np.ones(n, dtype=bool)
        free[pinned] = False
        self.free = np.nonzero(free)[0]
        self.pinned = np.array(pinned, dtype=np.int64)
        self.inertia = masses / (dt * dt)
        w2 = sp.diags(constraints.weight * constraints.weight)
        matrix = (sp.diags(self.inertia) + constraints.incidence.T @ w2 @ constraints.incidence).tocsr()
        self.matrix = matrix
        self._coupling = matrix[self.free][:, self.pinned]
        self._lu = None
        if len(self.free) > 0:
            logger.debug("Factorizing ADMM system (%d free vertices)...", len(self.free))
            self._lu = splu(matrix[self.free][:, self.free].tocsc())

    def matches(self, state: SolverState, dt: float) -> bool:
        return self.vertex_count == state.vertex_count and self.dt == dt and \
            np.array_equal(self.pinned, state.pinned)

    def solve(self, rhs: np.ndarray, pinned_positions: np.ndarray) -> np.ndarray:
        """Solves A x = rhs for the free vertices, with the pinned vertices held at pinned_positions."""
        x = np.empty_like(rhs)
        x[self.pinned] = pinned_positions
        if self._lu is not None:
            reduced = rhs[self.free] - self._coupling @ pinned_positions
            x[self.free] = self._lu.solve(reduced)
        return x


def step_admm(state: SolverState, constraints: ConstraintSet, params: SolverParams,
              system: Optional[AdmmSystem] = None) -> np.ndarray:
    """
    Solves the implicit step for state.predicted (set by predict) with a fixed number of
    ADMM rounds: local projection of z with dual u, global prefactorized solve, dual update.

    The iterate with the lowest objective (x~ included) is returned, so the objective at the result
    never exceeds its value at x~. Positions and velocities of the state are updated.

    :raises: SolverDivergenceError: If the result is not finite.
    """
    predicted = state.predicted
    old_positions = state.positions
    if constraints.is_empty or len(state.pinned) == state.vertex_count:
        new_positions = predicted.copy()
    else:
        if system is None or not system.matches(state, params.dt):
            system = AdmmSystem(constraints, state.masses, state.pinned, params.dt)
        constraints.prepare_step(predicted, params.warm_start)
        d = constraints.incidence
        w2 = (constraints.weight * constraints.weight)[:, None]
        inertia_rhs = system.inertia[:, None] * predicted
        pinned_positions = predicted[state.pinned]
        z, u = constraints.z, constraints.u

        x = predicted.copy()
        best = x
        best_energy = energy(x, constraints, predicted, state.masses, params.dt)
        best_iteration = 0
        for iteration in range(1, params.admm_iterations + 1):
            z = project_distance(d @ x + u, constraints.rest_length, constraints.stiffness, constraints.weight)
            x = system.solve(inertia_rhs + d.T @ (w2 * (z - u)), pinned_positions)
            u = u + d @ x - z
            value = energy(x, constraints, predicted, state.masses, params.dt)
            if value <= best_energy:
                best, best_energy, best_iteration = x, value, iteration
        constraints.z, constraints.u = z, u
        if best_iteration != params.admm_iterations:
            logger.debug("ADMM: returning iterate %d of %d (lowest objective).",
                         best_iteration, params.admm_iterations)
        new_positions = best.copy()

    if not np.all(np.isfinite(new_positions)):
        raise SolverDivergenceError('ADMM', state.time)
    state.velocities = (new_positions - old_positions) / params.dt
    state.positions = new_positions
    return new_positions
