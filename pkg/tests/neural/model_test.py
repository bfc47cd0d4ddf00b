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

from hiercloth.neural.model import MlpModel, forward


def naive_forward(model, x):
    x = list(x)
    for k, (w, b) in enumerate(zip(model.weights, model.biases)):
        out = []
        for row in range(w.shape[0]):
            value = b[row]
            for col in range(w.shape[1]):
                value += x[col] * w[row, col]
            out.append(value if k == model.depth - 1 else max(value, 0.0))
        x = out
    return np.array(x)


class MlpModelTestCase(unittest.TestCase):
    def test_single_layer(self):
        model = MlpModel(1, [[[2.0]]], [[1.0]])
        np.testing.assert_array_equal([7.0], forward(model, np.array([3.0])))

    def test_relu_between_layers(self):
        model = MlpModel(1, [[[1.0]], [[1.0]]], [[0.0], [0.5]])
        np.testing.assert_array_equal([0.5], forward(model, np.array([-3.0])))
        np.testing.assert_array_equal([2.5], forward(model, np.array([2.0])))

    def test_matches_naive_evaluation(self):
        rng = np.random.default_rng(8)
        for seed in range(10):
            model = MlpModel.create(1, (16, 8), seed)
            model.biases[0] = rng.normal(size=16)
            inputs = rng.normal(size=(5, 9))
            batch = forward(model, inputs)
            for row in range(5):
                np.testing.assert_allclose(naive_forward(model, inputs[row]), batch[row], rtol=1e-12, atol=1e-14)
                np.testing.assert_array_equal(batch[row], forward(model, inputs[row]))

    def test_zeros(self):
        model = MlpModel.zeros(2)
        np.testing.assert_array_equal(np.zeros((4, 9)), forward(model, np.ones((4, 9))))
        self.assertEqual([9, 32, 32, 9], model.layer_dims)
        self.assertEqual(3, model.depth)

    def test_create(self):
        model = MlpModel.create(1, (20,), seed=4)
        self.assertEqual(model, MlpModel.create(1, (20,), seed=4))
        self.assertNotEqual(model, MlpModel.create(1, (20,), seed=5))
        limit = np.sqrt(6.0 / (9 + 20))
        self.assertLessEqual(np.max(np.abs(model.weights[0])), limit)
        np.testing.assert_array_equal(np.zeros(9), model.biases[1])

    def test_rounded(self):
        model = MlpModel.create(1, (4,), seed=1)
        rounded = model.rounded()
        for a, b in zip(model.parameters(), rounded.parameters()):
            np.testing.assert_array_equal(a.astype(np.float32), b)
        self.assertEqual(rounded, rounded.rounded())

    def test_invalid(self):
        self.assertRaises(ValueError, MlpModel, 1, [], [])
        self.assertRaises(ValueError, MlpModel, 1, [np.zeros((3, 9))], [np.zeros(2)])
        self.assertRaises(ValueError, MlpModel, 1, [np.zeros((3, 9)), np.zeros((9, 4))], [np.zeros(3), np.zeros(9)])
        self.assertRaises(ValueError, forward, MlpModel.zeros(1), np.zeros((2, 8)))
