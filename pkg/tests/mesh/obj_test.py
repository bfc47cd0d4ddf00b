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

from hiercloth.mesh.obj import format_obj, write_obj


class ObjTestCase(unittest.TestCase):
    def test_single_triangle(self):
        text = format_obj(np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]), np.array([[0, 1, 2]]))
        lines = text.splitlines()
        self.assertEqual(3, len([line for line in lines if line.startswith('v ')]))
        self.assertEqual(['f 1 2 3'], [line for line in lines if line.startswith('f ')])
        self.assertEqual('v 1.0 0.0 0.0', lines[1])

    def test_exact_coordinates(self):
        positions = np.array([[0.1, 1.0 / 3.0, -2e-17]])
        line = format_obj(positions, np.zeros((0, 3), dtype=np.int64)).splitlines()[0]
        self.assertEqual(positions[0].tolist(), [float(v) for v in line.split()[1:]])

    def test_write_is_stable(self):
        rng = np.random.default_rng(3)
        positions = rng.normal(size=(10, 3))
        triangles = rng.integers(0, 10, size=(6, 3))
        with tempfile.TemporaryDirectory() as tmp:
            first = os.path.join(tmp, 'a.obj')
            second = os.path.join(tmp, 'b.obj')
            write_obj(first, positions, triangles)
            write_obj(second, positions, triangles)
            with open(first, 'rb') as a, open(second, 'rb') as b:
                self.assertEqual(a.read(), b.read())

    def test_unwritable_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'missing', 'frame.obj')
            with self.assertRaises(OSError) as context:
                write_obj(path, np.zeros((3, 3)), np.array([[0, 1, 2]]))
            self.assertIn(path, str(context.exception))
