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
import unittest

import numpy as np

from hiercloth.harness.config import SimConfig
from hiercloth.harness.scenes import ClothScene
from hiercloth.solver.admm import AdmmSystem
from hiercloth.solver.constraints import ConstraintSet
from hiercloth.solver.data_types import SolverState, SolverParams, Sphere
from hiercloth.solver.stepper import SolverMethod, predict, step_coarse


class PredictTestCase(unittest.TestCase):
    def test_gravity(self):
        state = SolverState(np.zeros((1, 3)), np.zeros((1, 3)), [1.0])
        predict(state, SolverParams(dt=0.1, gravity=(0.0, -9.8, 0.0)))
        np.testing.assert_allclose([[0.0, -0.98, 0.0]], state.velocities, rtol=1e-15)
        np.testing.assert_allclose([[0.0, -0.098, 0.0]], state.predicted, rtol=1e-15)

    def test_constant_velocity(self):
        state = SolverState([[1.0, 2.0, 3.0]], [[1.0, 0.0, 0.0]], [1.0])
        predict(state, SolverParams(dt=0.5, gravity=(0.0, 0.0, 0.0)))
        np.testing.assert_array_equal([[1.5, 2.0, 3.0]], state.predicted)

    def test_pinned(self):
        state = SolverState([[1.0, 2.0, 3.0], [0.0, 0.0, 0.0]], np.zeros((2, 3)), [1.0, 1.0], pinned=[0])
        predict(state, SolverParams(dt=0.1))
        np.testing.assert_array_equal([1.0, 2.0, 3.0], state.predicted[0])
        np.testing.assert_array_equal([0.0, 0.0, 0.0], state.velocities[0])
        self.assertLess(state.predicted[1, 1], 0.0)

    def test_external_acceleration(self):
        state = SolverState(np.zeros((2, 3)), np.zeros((2, 3)), [1.0, 1.0],
                            external_accel=[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        predict(state, SolverParams(dt=1.0, gravity=(0.0, 0.0, 0.0)))
        np.testing.assert_array_equal([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]], state.velocities)


class StepCoarseTestCase(unittest.TestCase):
    def test_free_fall(self):
        for method in SolverMethod:
            params = SolverParams()
            state = SolverState([[0.0, 1.0, 0.0], [1.0, 1.0, 0.0]], [[0.5, 0.0, 0.0], [0.0, 0.0, 0.0]], [1.0, 2.0])
            constraints = ConstraintSet([], 2)
            x = state.positions.copy()
            v = state.velocities.copy()
            for _ in range(50):
                step_coarse(state, constraints, [], params, method)
                v = v + params.gravity * params.dt
                x = x + v * params.dt
            np.testing.assert_allclose(x, state.positions, rtol=1e-12, atol=1e-12)
            self.assertAlmostEqual(50 * params.dt, state.time, places=12)

    def test_flag_pins_fixed(self):
        config = SimConfig.from_dict({
            "scene": {"name": "flag"},
            "cloth": {"nx": 6, "ny": 4},
            "hierarchy": {"finer_levels": 0},
        })
        scene = ClothScene(config)
        for method in SolverMethod:
            state = scene.level_state(0)
            initial = state.positions[state.pinned].copy()
            constraints = scene.level_constraints(0)
            for _ in range(100):
                step_coarse(state, constraints, scene.primitives, scene.params, method)
                np.testing.assert_array_equal(initial, state.positions[state.pinned])
                np.testing.assert_array_equal(0.0, state.velocities[state.pinned])
            self.assertTrue(np.all(np.isfinite(state.positions)))
            # The wind moved the free part of the flag.
            self.assertGreater(np.max(np.abs(state.positions[:, 2])), 1e-3)

    def test_sphere_no_penetration(self):
        config = SimConfig.from_dict({
            "scene": {"name": "sphere"},
            "cloth": {"nx": 6, "ny": 6},
            "hierarchy": {"finer_levels": 0},
        })
        scene = ClothScene(config)
        sphere = [p for p in scene.primitives if isinstance(p, Sphere)][0]
        state = scene.level_state(0)
        constraints = scene.level_constraints(0)
        system = AdmmSystem(constraints, state.masses, state.pinned, scene.params.dt)
        touched = False
        for _ in range(150):
            step_coarse(state, constraints, scene.primitives, scene.params, SolverMethod.ADMM, system)
            distances = np.linalg.norm(state.positions - sphere.center, axis=1)
            self.assertGreaterEqual(np.min(distances), sphere.radius - 1e-9)
            touched = touched or np.min(distances) < sphere.radius + 1e-6
        self.assertTrue(touched)
