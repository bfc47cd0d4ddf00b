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
from typing import Tuple, Optional

import numpy as np
import scipy.sparse as sp

from hiercloth.error import SolverDivergenceError
from hiercloth.solver.constraints import ConstraintSet
from hiercloth.solver.data_types import SolverState, SolverParams
from hiercloth.solver.energy import energy_gradient, constraint_hessian

logger = logging.getLogger(__name__)


def conjugate_gradient(matrix, rhs: np.ndarray, iterations: int, tolerance: float,
                       initial: Optional[np.ndarray] = None) -> Tuple[np.ndarray, int, float]:
    """
    Conjugate gradients for a symmetric positive definite matrix.
    Stops after `iterations` iterations or once |r| <= tolerance * |rhs|.
    Returns (solution, iterations done, final relative residual).
    """
    x = np.zeros_like(rhs) if initial is None else initial.copy()
    r = rhs - matrix @ x
    rhs_norm = np.linalg.norm(rhs)
    if rhs_norm == 0:
        return x, 0, 0.0
    p = r.copy()
    rr = r @ r
    done = 0
    for done in range(1, iterations + 1):
        ap = matrix @ p
        curvature = p @ ap
        if curvature <= 0:
            logger.debug("CG: non-positive curvature in iteration %d, stopping.", done)
            break
        alpha = rr / curvature
        x += alpha * p
        r -= alpha * ap
        rr_new = r @ r
        if np.sqrt(rr_new) <= tolerance * rhs_norm:
            rr = rr_new
            break
        p = r + (rr_new / rr) * p
        rr = rr_new
    return x, done, float(np.sqrt(rr) / rhs_norm)


def free_dofs(state: SolverState) -> np.ndarray:
    """Flat degree-of-freedom indices (3 * vertex + coordinate) of the unpinned vertices."""
    free = np.nonzero(state.free_mask)[0]
    return (3 * free[:, None] + np.arange(3)[None, :]).reshape(-1)


def assemble_newton_system(state: SolverState, constraints: ConstraintSet,
                           params: SolverParams) -> Tuple[sp.csr_matrix, np.ndarray, np.ndarray]:
    """
    The linearized implicit Euler system at the current positions x_t:

        (M / dt^2 + H(x_t)) dx = -grad E(x_t)

    where E is the implicit step objective around state.predicted and H the clamped Hessian of
    the constraint energy. Returns (matrix, rhs, dofs) restricted to the free degrees of freedom.
    """
    masses = np.repeat(state.masses, 3) / (params.dt * params.dt)
    matrix = (sp.diags(masses) + constraint_hessian(state.positions, constraints)).tocsr()
    gradient = energy_gradient(state.positions, constraints, state.predicted, state.masses, params.dt)
    dofs = free_dofs(state)
    return matrix[dofs][:, dofs], -gradient.reshape(-1)[dofs], dofs


def step_cg(state: SolverState, constraints: ConstraintSet, params: SolverParams) -> np.ndarray:
    """
    Baseline implicit step: one linearized implicit Euler solve with `cg_iterations` CG iterations.
    Positions and velocities of the state are updated.

    :raises: SolverDivergenceError: If the result is not finite.
    """
    old_positions = state.positions
    if constraints.is_empty or len(state.pinned) == state.vertex_count:
        new_positions = state.predicted.copy()
    else:
        matrix, rhs, dofs = assemble_newton_system(state, constraints, params)
        delta, done, residual = conjugate_gradient(matrix, rhs, params.cg_iterations, params.cg_tolerance)
        logger.debug("CG: %d iterations, relative residual %.3e.", done, residual)
        new_positions = old_positions.copy()
        flat = new_positions.reshape(-1)
        flat[dofs] += delta

    if not np.all(np.isfinite(new_positions)):
        raise SolverDivergenceError('CG', state.time)
    state.velocities = (new_positions - old_positions) / params.dt
    state.positions = new_positions
    return new_positions
