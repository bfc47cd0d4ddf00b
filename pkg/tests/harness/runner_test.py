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
import os
import tempfile
import unittest

import numpy as np

from hiercloth.error import SimulationAbortedError, ConfigError, InferenceError
from hiercloth.harness.config import SimConfig
from hiercloth.harness.runner import run_conventional, run_hybrid, load_models, check_models, solver_method
from hiercloth.harness.scenes import ClothScene
from hiercloth.neural.checkpoint import save_model
from hiercloth.neural.model import MlpModel
from hiercloth.solver.data_types import Sphere
from hiercloth.solver.stepper import SolverMethod


def small_config(name='hang', finer_levels=1, frames=10, **sections):
    data = {"scene": {"name": name, "frames": frames}, "cloth": {"nx": 4, "ny": 4},
            "hierarchy": {"finer_levels": finer_levels}, "output": {"export": False}}
    data.update(sections)
    return SimConfig.from_dict(data)


def models_for(levels, seed=0):
    return [MlpModel.create(level, seed=seed + level) for level in range(1, levels + 1)]


class ConventionalTestCase(unittest.TestCase):
    def test_frames(self):
        config = small_config(frames=6)
        result = run_conventional(config)
        self.assertEqual(6, len(result))
        self.assertEqual([0], result.levels)
        self.assertEqual(6, len(result.step_ms))
        self.assertEqual((25, 3), result.positions(5, 0).shape)
        self.assertFalse(np.array_equal(result.positions(0, 0), result.positions(5, 0)))

    def test_finer_level(self):
        config = small_config(frames=2)
        for method in SolverMethod:
            result = run_conventional(config, 1, method)
            self.assertEqual((81, 3), result.positions(1, 1).shape)

    def test_method(self):
        self.assertEqual(SolverMethod.CG, solver_method(small_config(solver={"method": "cg"})))
        self.assertEqual(SolverMethod.ADMM, solver_method(small_config()))

    def test_invalid_level(self):
        self.assertRaises(ValueError, run_conventional, small_config(), 2)

    def test_export(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = small_config(frames=3, output={"directory": tmp, "export": True})
            result = run_conventional(config)
            self.assertEqual([os.path.join(tmp, 'frame_%05d_l0.obj' % k) for k in (1, 2, 3)], result.written)
            for path in result.written:
                self.assertTrue(os.path.exists(path))


class HybridTestCase(unittest.TestCase):
    def test_no_finer_levels_equals_conventional(self):
        config = small_config('flag', finer_levels=0, frames=20)
        hybrid = run_hybrid(config, [])
        conventional = run_conventional(config, 0, SolverMethod.ADMM)
        for k in range(20):
            np.testing.assert_array_equal(conventional.positions(k, 0), hybrid.positions(k, 0))

    def test_zero_models_keep_midpoints_at_rest(self):
        config = small_config(finer_levels=2, frames=5)
        scene = ClothScene(config)
        result = run_hybrid(config, [MlpModel.zeros(1), MlpModel.zeros(2)], scene)
        hierarchy = scene.hierarchy
        self.assertEqual([0, 1, 2], result.levels)
        for k in range(5):
            coarse = result.positions(k, 0)
            finest = result.positions(k, 2)
            np.testing.assert_array_equal(coarse, finest[:len(coarse)])
            for level in (1, 2):
                midpoints = hierarchy.edge_to_midpoint[level - 1]
                np.testing.assert_array_equal(hierarchy.rest_positions(level)[midpoints],
                                              result.positions(k, level)[midpoints])

    def test_deterministic(self):
        config = small_config('flag', finer_levels=2, frames=5)
        models = models_for(2)
        first = run_hybrid(config, models, workers=1)
        second = run_hybrid(config, models, workers=3)
        for k in range(5):
            for level in first.levels:
                np.testing.assert_array_equal(first.positions(k, level), second.positions(k, level))
        self.assertEqual(5, len(first.inference_ms))

    def test_output_levels(self):
        config = small_config(finer_levels=2, frames=2, output={"levels": [2], "export": False})
        result = run_hybrid(config, models_for(2))
        self.assertEqual([2], result.levels)
        self.assertEqual(1, len(result.frames[0]))

    def test_fine_collisions(self):
        config = small_config('sphere', finer_levels=1, frames=120,
                              hierarchy={"finer_levels": 1, "fine_collisions": True})
        result = run_hybrid(config, models_for(1, seed=5))
        sphere = [p for p in config.collisions if isinstance(p, Sphere)][0]
        for k in range(len(result)):
            distances = np.linalg.norm(result.positions(k, 1) - sphere.center, axis=1)
            self.assertGreaterEqual(np.min(distances), sphere.radius - 1e-9)

    def test_inference_failure(self):
        models = models_for(1)
        models[0].biases[-1][:] = np.nan
        with self.assertRaises(SimulationAbortedError) as context:
            run_hybrid(small_config(), models)
        self.assertEqual(1, context.exception.frame)
        self.assertIsInstance(context.exception.__cause__, InferenceError)

    def test_models(self):
        self.assertRaises(ConfigError, check_models, models_for(1), 2)
        self.assertRaises(ConfigError, check_models, [MlpModel.create(2)], 1)
        with tempfile.TemporaryDirectory() as tmp:
            paths = [os.path.join(tmp, 'l1.hcsnn'), os.path.join(tmp, 'l2.hcsnn')]
            for model, path in zip(models_for(2), paths):
                save_model(model, path)
            config = small_config(finer_levels=2, solver={"method": "hybrid"},
                                  hierarchy={"finer_levels": 2, "models": paths})
            self.assertEqual([1, 2], [m.level_index for m in load_models(config)])
            self.assertEqual(3, len(run_hybrid(config, frames=3)))
            missing = config.with_overrides(model_paths=[paths[0], os.path.join(tmp, 'l3.hcsnn')])
            self.assertRaises(ConfigError, load_models, missing)
