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
"""
Simulation configuration.

A configuration is a JSON object with the sections below. Every key is optional; missing keys
take the defaults of the selected scene, which in turn fall back to the defaults here.

    {
      "scene":      {"name": "flag", "frames": 300, "seed": 0, "jitter": 0.0},
      "cloth":      {"nx": 8, "ny": 8, "width": 1.0, "height": 1.0, "total_mass": 0.5, "pinned": "left-corners"},
      "material":   {"stretch_stiffness": 1000.0, "bending_stiffness": 10.0},
      "solver":     {"method": "admm", "dt": 0.00667, "gravity": [0, -9.8, 0], "admm_iterations": 20,
                     "cg_iterations": 100, "cg_tolerance": 1e-8, "damping": 0.0, "warm_start": true,
                     "wind": [0, 0, 0], "load": 0.0},
      "hierarchy":  {"finer_levels": 2, "models": ["model_l1.hcsnn", "model_l2.hcsnn"], "workers": 1,
                     "fine_collisions": false},
      "collisions": [{"type": "sphere", "center": [0, 0, 0], "radius": 0.3, "friction": 0.0},
                     {"type": "plane", "normal": [0, 1, 0], "offset": -0.5, "friction": 0.0}],
      "output":     {"directory": "out", "levels": [0, 2], "export": true}
    }

All physical units are SI.
"""
import copy
import json
import os
from typing import List, Optional, Union, Sequence

import numpy as np

from hiercloth.error import ConfigError
from hiercloth.mesh.hierarchy import DEFAULT_MAX_FINER_LEVELS
from hiercloth.solver.data_types import SolverParams, CollisionPrimitive, Sphere, HalfSpace, DEFAULT_DT, \
    DEFAULT_GRAVITY, DEFAULT_ADMM_ITERATIONS, DEFAULT_CG_ITERATIONS, DEFAULT_CG_TOLERANCE, DEFAULT_TOTAL_MASS
from hiercloth.util import open_utf8, f, _

SECTION_SCENE = "scene"
SCENE_NAME = "name"
SCENE_FRAMES = "frames"
SCENE_SEED = "seed"
SCENE_JITTER = "jitter"

SECTION_CLOTH = "cloth"
CLOTH_NX = "nx"
CLOTH_NY = "ny"
CLOTH_WIDTH = "width"
CLOTH_HEIGHT = "height"
CLOTH_TOTAL_MASS = "total_mass"
CLOTH_PINNED = "pinned"

SECTION_MATERIAL = "material"
MATERIAL_STRETCH = "stretch_stiffness"
MATERIAL_BENDING = "bending_stiffness"

SECTION_SOLVER = "solver"
SOLVER_METHOD = "method"
SOLVER_DT = "dt"
SOLVER_GRAVITY = "gravity"
SOLVER_ADMM_ITERATIONS = "admm_iterations"
SOLVER_CG_ITERATIONS = "cg_iterations"
SOLVER_CG_TOLERANCE = "cg_tolerance"
SOLVER_DAMPING = "damping"
SOLVER_WARM_START = "warm_start"
SOLVER_WIND = "wind"
SOLVER_LOAD = "load"

SECTION_HIERARCHY = "hierarchy"
HIERARCHY_FINER_LEVELS = "finer_levels"
HIERARCHY_MODELS = "models"
HIERARCHY_WORKERS = "workers"
HIERARCHY_FINE_COLLISIONS = "fine_collisions"

SECTION_COLLISIONS = "collisions"
COLLISION_TYPE = "type"
COLLISION_TYPE_SPHERE = "sphere"
COLLISION_TYPE_PLANE = "plane"
COLLISION_CENTER = "center"
COLLISION_RADIUS = "radius"
COLLISION_NORMAL = "normal"
COLLISION_OFFSET = "offset"
COLLISION_FRICTION = "friction"

SECTION_OUTPUT = "output"
OUTPUT_DIRECTORY = "directory"
OUTPUT_LEVELS = "levels"
OUTPUT_EXPORT = "export"

PINNED_NONE = "none"
PINNED_LEFT_CORNERS = "left-corners"
PINNED_TOP_CORNERS = "top-corners"
PINNED_TOP_ROW = "top-row"
PINNED_SPECS = (PINNED_NONE, PINNED_LEFT_CORNERS, PINNED_TOP_CORNERS, PINNED_TOP_ROW)

METHOD_ADMM = "admm"
METHOD_CG = "cg"
METHOD_HYBRID = "hybrid"
METHODS = (METHOD_ADMM, METHOD_CG, METHOD_HYBRID)

SECTIONS = (SECTION_SCENE, SECTION_CLOTH, SECTION_MATERIAL, SECTION_SOLVER, SECTION_HIERARCHY,
            SECTION_COLLISIONS, SECTION_OUTPUT)

DEFAULTS = {
    SECTION_SCENE: {SCENE_NAME: "hang", SCENE_FRAMES: 300, SCENE_SEED: 0, SCENE_JITTER: 0.0},
    SECTION_CLOTH: {CLOTH_NX: 8, CLOTH_NY: 8, CLOTH_WIDTH: 1.0, CLOTH_HEIGHT: 1.0,
                    CLOTH_TOTAL_MASS: DEFAULT_TOTAL_MASS, CLOTH_PINNED: PINNED_TOP_CORNERS},
    SECTION_MATERIAL: {MATERIAL_STRETCH: 1000.0, MATERIAL_BENDING: 10.0},
    SECTION_SOLVER: {SOLVER_METHOD: METHOD_ADMM, SOLVER_DT: DEFAULT_DT, SOLVER_GRAVITY: list(DEFAULT_GRAVITY),
                     SOLVER_ADMM_ITERATIONS: DEFAULT_ADMM_ITERATIONS, SOLVER_CG_ITERATIONS: DEFAULT_CG_ITERATIONS,
                     SOLVER_CG_TOLERANCE: DEFAULT_CG_TOLERANCE, SOLVER_DAMPING: 0.0, SOLVER_WARM_START: True,
                     SOLVER_WIND: [0.0, 0.0, 0.0], SOLVER_LOAD: 0.0},
    SECTION_HIERARCHY: {HIERARCHY_FINER_LEVELS: 2, HIERARCHY_MODELS: [], HIERARCHY_WORKERS: 1,
                        HIERARCHY_FINE_COLLISIONS: False},
    SECTION_COLLISIONS: [],
    SECTION_OUTPUT: {OUTPUT_DIRECTORY: "out", OUTPUT_LEVELS: None, OUTPUT_EXPORT: True},
}


def merge_sections(base: dict, override: dict) -> dict:
    """Returns base updated section by section with override. The collision list is replaced, not merged."""
    result = copy.deepcopy(base)
    for section, values in override.items():
        if section not in SECTIONS:
            raise ConfigError(f(_("Unknown configuration section '{section}'.")))
        if section == SECTION_COLLISIONS:
            if not isinstance(values, list):
                raise ConfigError(_("'collisions' must be a list of objects."))
            result[section] = copy.deepcopy(values)
            continue
        if not isinstance(values, dict):
            raise ConfigError(f(_("Section '{section}' must be an object.")))
        unknown = set(values) - set(DEFAULTS[section])
        if unknown:
            keys = ', '.join(sorted(unknown))
            raise ConfigError(f(_("Unknown key(s) in section '{section}': {keys}.")))
        result.setdefault(section, {}).update(copy.deepcopy(values))
    return result


def _vector(value, name: str) -> np.ndarray:
    try:
        vector = np.array(value, dtype=np.float64).reshape(3)
    except (TypeError, ValueError):
        raise ConfigError(f(_("'{name}' must be a list of three numbers.")))
    if not np.all(np.isfinite(vector)):
        raise ConfigError(f(_("'{name}' must be finite.")))
    return vector


def _positive(value, name: str, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or \
            (integer and not isinstance(value, int)) or not value > 0 or not np.isfinite(value):
        kind = "a positive integer" if integer else "a positive number"
        raise ConfigError(f(_("'{name}' must be {kind} (got {value!r}).")))
    return value


def _non_negative(value, name: str):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not value >= 0 or not np.isfinite(value):
        raise ConfigError(f(_("'{name}' must be a non-negative number (got {value!r}).")))
    return float(value)


def _collision(entry) -> CollisionPrimitive:
    if not isinstance(entry, dict) or COLLISION_TYPE not in entry:
        raise ConfigError(_("Every collision entry needs a 'type'."))
    kind = entry[COLLISION_TYPE]
    friction = entry.get(COLLISION_FRICTION, 0.0)
    if isinstance(friction, bool) or not isinstance(friction, (int, float)) or not 0 <= friction <= 1:
        raise ConfigError(f(_("Collision friction must be in [0, 1] (got {friction!r}).")))
    if kind == COLLISION_TYPE_SPHERE:
        if COLLISION_CENTER not in entry or COLLISION_RADIUS not in entry:
            raise ConfigError(_("A sphere needs 'center' and 'radius'."))
        return Sphere(_vector(entry[COLLISION_CENTER], COLLISION_CENTER),
                      _positive(entry[COLLISION_RADIUS], COLLISION_RADIUS), friction)
    if kind == COLLISION_TYPE_PLANE:
        if COLLISION_NORMAL not in entry or COLLISION_OFFSET not in entry:
            raise ConfigError(_("A plane needs 'normal' and 'offset'."))
        normal = _vector(entry[COLLISION_NORMAL], COLLISION_NORMAL)
        if not np.linalg.norm(normal) > 0:
            raise ConfigError(_("A plane normal must not be zero."))
        offset = entry[COLLISION_OFFSET]
        if isinstance(offset, bool) or not isinstance(offset, (int, float)):
            raise ConfigError(_("A plane offset must be a number."))
        return HalfSpace(normal, offset, friction)
    raise ConfigError(f(_("Unknown collision type '{kind}'.")))


class SimConfig:
    """
    A validated simulation configuration. Build it with SimConfig.from_dict / from_json,
    which apply the scene defaults (see hiercloth.harness.scenes) before validating.
    """
    def __init__(self, data: dict, base_path: Optional[str] = None):
        self.data = data
        scene = data[SECTION_SCENE]
        cloth = data[SECTION_CLOTH]
        material = data[SECTION_MATERIAL]
        solver = data[SECTION_SOLVER]
        hierarchy = data[SECTION_HIERARCHY]
        output = data[SECTION_OUTPUT]

        self.scene: str = str(scene[SCENE_NAME])
        self.frames: int = _positive(scene[SCENE_FRAMES], SCENE_FRAMES, integer=True)
        seed = scene[SCENE_SEED]
        if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
            raise ConfigError(f(_("'{SCENE_SEED}' must be a non-negative integer (got {seed!r}).")))
        self.seed: int = seed
        self.jitter: float = _non_negative(scene[SCENE_JITTER], SCENE_JITTER)

        self.nx: int = _positive(cloth[CLOTH_NX], CLOTH_NX, integer=True)
        self.ny: int = _positive(cloth[CLOTH_NY], CLOTH_NY, integer=True)
        self.width: float = float(_positive(cloth[CLOTH_WIDTH], CLOTH_WIDTH))
        self.height: float = float(_positive(cloth[CLOTH_HEIGHT], CLOTH_HEIGHT))
        self.total_mass: float = float(_positive(cloth[CLOTH_TOTAL_MASS], CLOTH_TOTAL_MASS))
        self.pinned: Union[str, List[int]] = self._read_pinned(cloth[CLOTH_PINNED])

        self.stretch_stiffness: float = float(_positive(material[MATERIAL_STRETCH], MATERIAL_STRETCH))
        self.bending_stiffness: float = _non_negative(material[MATERIAL_BENDING], MATERIAL_BENDING)

        self.method: str = solver[SOLVER_METHOD]
        if self.method not in METHODS:
            expected = ', '.join(METHODS)
            raise ConfigError(f(_("Unknown solver method '{self.method}' (expected one of {expected}).")))
        self.wind: np.ndarray = _vector(solver[SOLVER_WIND], SOLVER_WIND)
        self.load: float = _non_negative(solver[SOLVER_LOAD], SOLVER_LOAD)
        try:
            self.solver_params = SolverParams(
                dt=_positive(solver[SOLVER_DT], SOLVER_DT),
                gravity=_vector(solver[SOLVER_GRAVITY], SOLVER_GRAVITY),
                admm_iterations=_positive(solver[SOLVER_ADMM_ITERATIONS], SOLVER_ADMM_ITERATIONS, integer=True),
                cg_iterations=_positive(solver[SOLVER_CG_ITERATIONS], SOLVER_CG_ITERATIONS, integer=True),
                cg_tolerance=_non_negative(solver[SOLVER_CG_TOLERANCE], SOLVER_CG_TOLERANCE),
                damping=_non_negative(solver[SOLVER_DAMPING], SOLVER_DAMPING),
                warm_start=bool(solver[SOLVER_WARM_START])
            )
        except ValueError as e:
            raise ConfigError(str(e)) from e

        finer_levels = hierarchy[HIERARCHY_FINER_LEVELS]
        if isinstance(finer_levels, bool) or not isinstance(finer_levels, int) or \
                not 0 <= finer_levels <= DEFAULT_MAX_FINER_LEVELS:
            raise ConfigError(f(_("'{HIERARCHY_FINER_LEVELS}' must be an integer in "
                                  "[0, {DEFAULT_MAX_FINER_LEVELS}] (got {finer_levels!r}).")))
        self.finer_levels: int = finer_levels
        models = hierarchy[HIERARCHY_MODELS]
        if not isinstance(models, list) or not all(isinstance(m, str) for m in models):
            raise ConfigError(_("'models' must be a list of file paths."))
        if base_path is not None:
            models = [os.path.join(base_path, m) for m in models]
        self.model_paths: List[str] = models
        self.workers: int = _positive(hierarchy[HIERARCHY_WORKERS], HIERARCHY_WORKERS, integer=True)
        self.fine_collisions: bool = bool(hierarchy[HIERARCHY_FINE_COLLISIONS])

        self.collisions: List[CollisionPrimitive] = [_collision(c) for c in data[SECTION_COLLISIONS]]

        directory = output[OUTPUT_DIRECTORY]
        if not isinstance(directory, str):
            raise ConfigError(_("'directory' must be a path."))
        self.output_directory: str = directory
        levels = output[OUTPUT_LEVELS]
        if levels is None:
            levels = list(range(self.finer_levels + 1))
        if not isinstance(levels, list) or not all(isinstance(i, int) and 0 <= i <= self.finer_levels
                                                   for i in levels):
            raise ConfigError(f(_("'levels' must list level indices in [0, {self.finer_levels}].")))
        self.output_levels: List[int] = sorted(set(levels))
        self.export: bool = bool(output[OUTPUT_EXPORT])

        self.check_models()

    def check_models(self):
        """In hybrid mode one model path is required per finer level."""
        if self.method == METHOD_HYBRID and len(self.model_paths) != self.finer_levels:
            raise ConfigError(f(_("Hybrid mode with {self.finer_levels} finer level(s) needs exactly "
                                  "{self.finer_levels} model path(s), got {len(self.model_paths)}.")))

    @staticmethod
    def _read_pinned(value) -> Union[str, List[int]]:
        if isinstance(value, str):
            if value not in PINNED_SPECS:
                expected = ', '.join(PINNED_SPECS)
                raise ConfigError(f(_("Unknown pinned vertex spec '{value}' "
                                      "(expected one of {expected} or a list of indices).")))
            return value
        if isinstance(value, list) and all(isinstance(v, int) and not isinstance(v, bool) and v >= 0
                                           for v in value):
            return list(value)
        raise ConfigError(_("'pinned' must be a pinned vertex spec or a list of vertex indices."))

    @classmethod
    def from_dict(cls, data: dict, base_path: Optional[str] = None) -> 'SimConfig':
        from hiercloth.harness.scenes import scene_defaults
        if not isinstance(data, dict):
            raise ConfigError(_("The configuration must be a JSON object."))
        scene = data.get(SECTION_SCENE, {})
        if not isinstance(scene, dict):
            raise ConfigError(f(_("Section '{SECTION_SCENE}' must be an object.")))
        name = scene.get(SCENE_NAME, DEFAULTS[SECTION_SCENE][SCENE_NAME])
        merged = merge_sections(scene_defaults(name), data)
        return cls(merged, base_path)

    @classmethod
    def from_json(cls, path: str) -> 'SimConfig':
        """Model paths in the file are resolved relative to the file's directory."""
        if not os.path.exists(path):
            raise ConfigError(f(_("Configuration file {path} does not exist.")))
        with open_utf8(path, 'r') as file:
            try:
                data = json.load(file)
            except json.JSONDecodeError as e:
                raise ConfigError(f(_("Configuration file {path} is not valid JSON: {e}"))) from e
        return cls.from_dict(data, os.path.dirname(os.path.abspath(path)))

    def with_overrides(self, method: Optional[str] = None, frames: Optional[int] = None,
                       output_directory: Optional[str] = None, seed: Optional[int] = None,
                       model_paths: Optional[Sequence[str]] = None) -> 'SimConfig':
        """A copy with command line overrides applied and validated again."""
        data = copy.deepcopy(self.data)
        if method is not None:
            data[SECTION_SOLVER][SOLVER_METHOD] = method
        if frames is not None:
            data[SECTION_SCENE][SCENE_FRAMES] = frames
        if output_directory is not None:
            data[SECTION_OUTPUT][OUTPUT_DIRECTORY] = output_directory
        if seed is not None:
            data[SECTION_SCENE][SCENE_SEED] = seed
        # Model paths are already resolved.
        data[SECTION_HIERARCHY][HIERARCHY_MODELS] = list(model_paths if model_paths is not None
                                                         else self.model_paths)
        return SimConfig(data)

    def __str__(self):
        return f"{self.__class__.__name__}<{self.scene}, {self.nx}x{self.ny}, N={self.finer_levels}, " \
               f"{self.method}, {self.frames} frames>"

    def __repr__(self):
        return str(self)
