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
import json
import os
import tempfile
import unittest

import numpy as np

from hiercloth.error import ConfigError
from hiercloth.harness.config import SimConfig, merge_sections, DEFAULTS
from hiercloth.solver.data_types import Sphere, HalfSpace


class SimConfigTestCase(unittest.TestCase):
    def test_defaults(self):
        config = SimConfig.from_dict({})
        self.assertEqual('hang', config.scene)
        self.assertEqual(300, config.frames)
        self.assertEqual(2, config.finer_levels)
        self.assertEqual([0, 1, 2], config.output_levels)
        self.assertEqual('admm', config.method)
        self.assertTrue(config.solver_params.warm_start)
        self.assertEqual(0.0, config.solver_params.damping)

    def test_scene_defaults(self):
        config = SimConfig.from_dict({"scene": {"name": "flag"}})
        self.assertEqual((16, 12), (config.nx, config.ny))
        self.assertEqual('left-corners', config.pinned)
        np.testing.assert_array_equal([4.0, 0.0, 2.5], config.wind)
        sphere = SimConfig.from_dict({"scene": {"name": "sphere"}})
        self.assertEqual([Sphere, HalfSpace], [type(p) for p in sphere.collisions])

    def test_overrides_win(self):
        config = SimConfig.from_dict({"scene": {"name": "flag"}, "cloth": {"nx": 4}, "collisions": []})
        self.assertEqual(4, config.nx)
        self.assertEqual(12, config.ny)
        self.assertEqual([], config.collisions)

    def test_invalid(self):
        for data in (
            {"scene": {"name": "moon"}},
            {"scene": "flag"},
            {"physics": {}},
            {"cloth": {"nx": 0}},
            {"cloth": {"nx": 2.5}},
            {"cloth": {"colour": "red"}},
            {"cloth": {"pinned": "bottom"}},
            {"cloth": {"pinned": [-1]}},
            {"solver": {"method": "euler"}},
            {"solver": {"dt": -0.1}},
            {"solver": {"damping": 1.5}},
            {"solver": {"gravity": [0, 1]}},
            {"hierarchy": {"finer_levels": 9}},
            {"hierarchy": {"finer_levels": True}},
            {"collisions": [{"type": "cube"}]},
            {"collisions": [{"type": "sphere", "center": [0, 0, 0]}]},
            {"collisions": [{"type": "plane", "normal": [0, 0, 0], "offset": 0}]},
            {"collisions": [{"type": "sphere", "center": [0, 0, 0], "radius": 1, "friction": 2}]},
            {"output": {"levels": [5]}},
            {"solver": {"method": "hybrid"}, "hierarchy": {"finer_levels": 2, "models": ["a"]}},
            [],
        ):
            self.assertRaises(ConfigError, SimConfig.from_dict, data)

    def test_merge_replaces_collisions(self):
        base = merge_sections(DEFAULTS, {"collisions": [{"type": "plane"}]})
        merged = merge_sections(base, {"collisions": []})
        self.assertEqual([], merged["collisions"])
        self.assertEqual([], DEFAULTS["collisions"])

    def test_from_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'scene.json')
            with open(path, 'w') as file:
                json.dump({"solver": {"method": "hybrid"}, "hierarchy": {"finer_levels": 1, "models": ["m1.hcsnn"]}},
                          file)
            config = SimConfig.from_json(path)
            self.assertEqual([os.path.join(tmp, 'm1.hcsnn')], config.model_paths)
            with open(path, 'w') as file:
                file.write('{"scene": ')
            self.assertRaises(ConfigError, SimConfig.from_json, path)
            self.assertRaises(ConfigError, SimConfig.from_json, os.path.join(tmp, 'missing.json'))

    def test_with_overrides(self):
        config = SimConfig.from_dict({"hierarchy": {"finer_levels": 1}})
        changed = config.with_overrides(method='cg', frames=7, output_directory='elsewhere', seed=3)
        self.assertEqual(('cg', 7, 'elsewhere', 3), (changed.method, changed.frames, changed.output_directory,
                                                     changed.seed))
        self.assertEqual(('admm', 300), (config.method, config.frames))
        self.assertRaises(ConfigError, config.with_overrides, method='hybrid')
        self.assertEqual(['m.hcsnn'], config.with_overrides(method='hybrid', model_paths=['m.hcsnn']).model_paths)
