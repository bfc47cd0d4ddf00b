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

from hiercloth.error import TrainingDivergedError
from hiercloth.harness.config import SimConfig
from hiercloth.harness.runner import run_conventional
from hiercloth.harness.scenes import ClothScene
from hiercloth.neural.checkpoint import load_model
from hiercloth.neural.inference import infer_level
from hiercloth.neural.model import MlpModel
from hiercloth.solver.stepper import SolverMethod
from hiercloth.trainer.backprop import rmse_loss
from hiercloth.trainer.dataset import Dataset, generate_dataset, frame_samples
from hiercloth.trainer.training import TrainConfig, train, read_loss_log, write_loss_log, CHECKPOINT_FILE_PATTERN
from tests.util import slow_test


def linear_dataset(count=200, seed=0, scale=0.01):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(9, 9))
    b = rng.normal(size=9)
    inputs = rng.normal(scale=scale, size=(count, 9))
    return Dataset(1, inputs, inputs @ a.T + b * scale)


class TrainConfigTestCase(unittest.TestCase):
    def test_default_checkpoints(self):
        self.assertEqual([100, 1500, 2000], TrainConfig(epochs=2000).checkpoint_epochs)
        self.assertEqual([50], TrainConfig(epochs=50).checkpoint_epochs)
        self.assertEqual([100, 1500, 3000, 5000], TrainConfig(epochs=5000).checkpoint_epochs)

    def test_architecture(self):
        config = TrainConfig(hidden=(16, 16, 16))
        self.assertEqual(4, config.depth)
        self.assertEqual((8,), config.with_architecture((8,)).hidden)
        self.assertEqual(config.checkpoint_epochs, config.with_architecture((8,)).checkpoint_epochs)

    def test_invalid(self):
        self.assertRaises(ValueError, TrainConfig, epochs=0)
        self.assertRaises(ValueError, TrainConfig, batch_size=0)
        self.assertRaises(ValueError, TrainConfig, learning_rate=0.0)
        self.assertRaises(ValueError, TrainConfig, beta1=1.0)
        self.assertRaises(ValueError, TrainConfig, epochs=10, checkpoint_epochs=[11])
        self.assertRaises(ValueError, TrainConfig, hidden=(0,))


class TrainTestCase(unittest.TestCase):
    def test_deterministic(self):
        dataset = linear_dataset(64)
        config = TrainConfig(epochs=5, batch_size=16, hidden=(8,), seed=3)
        first, first_losses = train(dataset, config)
        second, second_losses = train(dataset, config)
        self.assertEqual(first, second)
        self.assertEqual(first_losses, second_losses)
        chunked, _losses = train(dataset, TrainConfig(epochs=5, batch_size=16, hidden=(8,), seed=3, workers=3))
        for a, b in zip(first.parameters(), chunked.parameters()):
            np.testing.assert_allclose(a, b, rtol=1e-9, atol=1e-12)

    def test_loss_decreases(self):
        dataset = linear_dataset(200)
        config = TrainConfig(epochs=100, batch_size=32, learning_rate=1e-2, hidden=(16,), checkpoint_epochs=[1, 100])
        model, losses = train(dataset, config)
        self.assertEqual([1, 100], [epoch for epoch, _loss in losses])
        self.assertLess(losses[1][1], losses[0][1])
        self.assertEqual(1, model.level_index)

    def test_checkpoints_reproduce_logged_loss(self):
        dataset = linear_dataset(100, seed=2)
        config = TrainConfig(epochs=20, batch_size=25, hidden=(12, 12), checkpoint_epochs=[10, 20])
        with tempfile.TemporaryDirectory() as tmp:
            _model, losses = train(dataset, config, tmp)
            self.assertEqual(losses, read_loss_log(os.path.join(tmp, 'loss_l1.csv')))
            for epoch, loss in losses:
                model = load_model(os.path.join(tmp, CHECKPOINT_FILE_PATTERN % (1, epoch)))
                self.assertEqual(1, model.level_index)
                reloaded = rmse_loss(model, dataset.inputs, dataset.targets)
                self.assertLessEqual(abs(reloaded - loss), 1e-6 * loss)

    def test_initial_model(self):
        dataset = linear_dataset(32)
        initial = MlpModel.create(1, (8,), seed=11)
        for normalize in (True, False):
            config = TrainConfig(epochs=1, hidden=(8,), learning_rate=1e-15, normalize=normalize)
            model, _losses = train(dataset, config, initial_model=initial)
            for a, b in zip(initial.parameters(), model.parameters()):
                np.testing.assert_allclose(a, b, atol=1e-9)
        self.assertEqual(MlpModel.create(1, (8,), seed=11), initial)

    def test_returns_raw_model(self):
        dataset = linear_dataset(64, scale=0.001)
        config = TrainConfig(epochs=3, batch_size=16, hidden=(8,), checkpoint_epochs=[3])
        model, losses = train(dataset, config)
        self.assertAlmostEqual(losses[-1][1], rmse_loss(model, dataset.inputs, dataset.targets),
                               delta=1e-5 * losses[-1][1])

    def test_divergence(self):
        dataset = linear_dataset(32)
        initial = MlpModel.create(1, (8,), seed=1)
        initial.weights[0][0, 0] = np.nan
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(TrainingDivergedError) as context:
                train(dataset, TrainConfig(epochs=3, checkpoint_epochs=[3], hidden=(8,)), tmp, initial)
            self.assertEqual(1, context.exception.epoch)
            self.assertIsNone(context.exception.last_checkpoint)

    def test_empty_dataset(self):
        self.assertRaises(ValueError, train, Dataset(1, np.zeros((0, 9)), np.zeros((0, 9))), TrainConfig(epochs=1))

    def test_loss_log(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'loss.csv')
            write_loss_log(path, [(1, 0.5), (10, 1.0 / 3.0)])
            self.assertEqual([(1, 0.5), (10, 1.0 / 3.0)], read_loss_log(path))
            with open(path, 'r') as file:
                self.assertEqual('epoch,loss\n', file.readline())

    @slow_test
    def test_overfit(self):
        # Few enough samples for the last hidden layer to interpolate arbitrary targets.
        rng = np.random.default_rng(9)
        dataset = Dataset(1, rng.normal(scale=0.01, size=(16, 9)), rng.normal(scale=0.01, size=(16, 9)))
        _model, losses = train(dataset, TrainConfig(epochs=2000, batch_size=100))
        self.assertLess(losses[-1][1], 1e-5)

    @slow_test
    def test_linear_dataset(self):
        _model, losses = train(linear_dataset(256, scale=0.001), TrainConfig(epochs=3000, batch_size=64))
        self.assertLess(losses[-1][1], 1e-6)


def flag_config(frames, finer_levels=1):
    return SimConfig.from_dict({
        "scene": {"name": "flag", "frames": frames},
        "hierarchy": {"finer_levels": finer_levels},
        "output": {"export": False},
    })


# Mean distance (m) between inferred and simulated level-1 positions of a frame left out of
# training, on the 1.6 m x 1.2 m flag.
HELD_OUT_MEAN_ERROR = 0.01


class FlagTrainingTestCase(unittest.TestCase):
    @slow_test
    def test_loss_keeps_decreasing(self):
        dataset = generate_dataset([flag_config(300)], 1, frames_per_scene=140, seed=0)
        self.assertGreaterEqual(len(dataset), 50000)
        config = TrainConfig(epochs=5000, batch_size=len(dataset), workers=4)
        self.assertEqual([100, 1500, 3000, 5000], config.checkpoint_epochs)
        _model, losses = train(dataset, config)
        self.assertEqual([100, 1500, 3000, 5000], [epoch for epoch, _loss in losses])
        values = [loss for _epoch, loss in losses]
        for earlier, later in zip(values, values[1:]):
            self.assertLess(later, earlier)
        self.assertLessEqual(values[-1], values[0] / 5)

    @slow_test
    def test_held_out_frame(self):
        config = flag_config(120)
        scene = ClothScene(config)
        hierarchy = scene.hierarchy
        result = run_conventional(config, 1, SolverMethod.ADMM, scene, export=False)
        held_out = 100
        inputs = []
        targets = []
        for frame in range(len(result)):
            if frame != held_out:
                frame_inputs, frame_targets = frame_samples(hierarchy, 1, result.frames[frame][0])
                inputs.append(frame_inputs)
                targets.append(frame_targets)
        dataset = Dataset(1, np.concatenate(inputs), np.concatenate(targets))
        model, _losses = train(dataset, TrainConfig(epochs=100, batch_size=256))

        simulated = result.positions(held_out, 1)
        inferred = infer_level(model, hierarchy, hierarchy.restrict(simulated, 0))
        error = np.linalg.norm(inferred - simulated, axis=1)
        self.assertTrue(np.all(error[:hierarchy.coarsest.vertex_count] == 0.0))
        self.assertLess(float(np.mean(error)), HELD_OUT_MEAN_ERROR)
