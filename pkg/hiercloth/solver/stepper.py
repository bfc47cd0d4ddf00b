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
from enum import Enum
from typing import Sequence, Optional

import numpy as np

from hiercloth.solver.admm import step_admm, AdmmSystem
from hiercloth.solver.cg import step_cg
from hiercloth.solver.collision import resolve_collisions
from hiercloth.solver.constraints import ConstraintSet
from hiercloth.solver.data_types import SolverState, SolverParams, CollisionPrimitive

logger = logging.getLogger(__name__)


class SolverMethod(Enum):
    ADMM = 'admm'
    CG = 'cg'


def predict(state: SolverState, params: SolverParams) -> np.ndarray:
    """
    Explicit part of the step: v <- v + a_ext dt, x~ <- x + v dt. Pinned vertices keep v = 0, x~ = x.
    """
    acceleration = params.gravity[None, :]
    if state.external_accel is not None:
        acceleration = acceleration + state.external_accel
    state.velocities = state.velocities + acceleration * params.dt
    state.velocities[state.pinned] = 0.0
    state.predicted = state.positions + state.velocities * params.dt
    state.predicted[state.pinned] = state.positions[state.pinned]
    return state.predicted


def step_coarse(state: SolverState, constraints: ConstraintSet, primitives: Sequence[CollisionPrimitive],
                params: SolverParams, method: SolverMethod = SolverMethod.ADMM,
                system: Optional[AdmmSystem] = None) -> SolverState:
    """
    Advances the coarse level by one time step:
    predict -> implicit solve -> collision response -> damping -> pin enforcement.

    :raises: SolverDivergenceError
    """
    predict(state, params)
    if method == SolverMethod.ADMM:
        step_admm(state, constraints, params, system)
    elif method == SolverMethod.CG:
        step_cg(state, constraints, params)
    else:
        raise ValueError(f"Unknown solver method: {method}")
    if len(primitives) > 0:
        state.positions, state.velocities = resolve_collisions(state.positions, state.velocities, primitives)
    if params.damping > 0:
        state.velocities *= (1.0 - params.damping)
    state.enforce_pins()
    state.time += params.dt
    return state
