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
The built-in scene catalog.

  flag     vertical cloth pinned at its two left corners, blown by a constant wind
  hang     horizontal cloth pinned at two corners, swinging down (stiffness variants via 'material')
  sphere   unpinned horizontal cloth falling onto a sphere above a floor plane
  stretch  vertical cloth pinned at its top corners with a strong downward load on the bottom row
"""
import copy
import logging
from typing import List, Dict

import numpy as np

from hiercloth.error import ConfigError
from hiercloth.harness.config import SimConfig, DEFAULTS, merge_sections, SECTION_SCENE, SCENE_NAME, \
    SECTION_CLOTH, CLOTH_NX, CLOTH_NY, CLOTH_WIDTH, CLOTH_HEIGHT, CLOTH_PINNED, SECTION_SOLVER, SOLVER_WIND, \
    SOLVER_LOAD, SECTION_COLLISIONS, COLLISION_TYPE, COLLISION_TYPE_SPHERE, COLLISION_TYPE_PLANE, \
    COLLISION_CENTER, COLLISION_RADIUS, COLLISION_NORMAL, COLLISION_OFFSET, COLLISION_FRICTION, \
    PINNED_NONE, PINNED_LEFT_CORNERS, PINNED_TOP_CORNERS, PINNED_TOP_ROW
from hiercloth.mesh.hierarchy import ClothHierarchy, build_hierarchy
from hiercloth.mesh.trimesh import TriMesh, build_grid_mesh, grid_vertex_index
from hiercloth.solver.constraints import ConstraintSet, build_cloth_constraints
from hiercloth.solver.data_types import SolverState
from hiercloth.util import make_rng, f, _

logger = logging.getLogger(__name__)

SCENE_FLAG = "flag"
SCENE_HANG = "hang"
SCENE_SPHERE = "sphere"
SCENE_STRETCH = "stretch"

VERTICAL = "vertical"
HORIZONTAL = "horizontal"

# Placement of the grid and the section overrides of every scene.
SCENES: Dict[str, dict] = {
    SCENE_FLAG: {
        'placement': VERTICAL, 'elevation': 0.0,
        'config': {
            SECTION_SCENE: {SCENE_NAME: SCENE_FLAG},
            SECTION_CLOTH: {CLOTH_NX: 16, CLOTH_NY: 12, CLOTH_WIDTH: 1.6, CLOTH_HEIGHT: 1.2,
                            CLOTH_PINNED: PINNED_LEFT_CORNERS},
            SECTION_SOLVER: {SOLVER_WIND: [4.0, 0.0, 2.5]},
        }
    },
    SCENE_HANG: {
        'placement': HORIZONTAL, 'elevation': 0.0,
        'config': {
            SECTION_SCENE: {SCENE_NAME: SCENE_HANG},
            SECTION_CLOTH: {CLOTH_PINNED: PINNED_TOP_CORNERS},
        }
    },
    SCENE_SPHERE: {
        'placement': HORIZONTAL, 'elevation': 0.5,
        'config': {
            SECTION_SCENE: {SCENE_NAME: SCENE_SPHERE},
            SECTION_CLOTH: {CLOTH_PINNED: PINNED_NONE},
            SECTION_COLLISIONS: [
                {COLLISION_TYPE: COLLISION_TYPE_SPHERE, COLLISION_CENTER: [0.0, 0.0, 0.0],
                 COLLISION_RADIUS: 0.3, COLLISION_FRICTION: 0.1},
                {COLLISION_TYPE: COLLISION_TYPE_PLANE, COLLISION_NORMAL: [0.0, 1.0, 0.0],
                 COLLISION_OFFSET: -0.6, COLLISION_FRICTION: 0.1},
            ],
        }
    },
    SCENE_STRETCH: {
        'placement': VERTICAL, 'elevation': 0.0,
        'config': {
            SECTION_SCENE: {SCENE_NAME: SCENE_STRETCH},
            SECTION_CLOTH: {CLOTH_PINNED: PINNED_TOP_CORNERS},
            SECTION_SOLVER: {SOLVER_LOAD: 40.0},
        }
    },
}


def scene_names() -> List[str]:
    return sorted(SCENES)


def scene_defaults(name: str) -> dict:
    """The complete configuration sections of a scene, before user overrides."""
    if name not in SCENES:
        expected = ', '.join(scene_names())
        raise ConfigError(f(_("Unknown scene '{name}' (expected one of {expected}).")))
    return merge_sections(copy.deepcopy(DEFAULTS), SCENES[name]['config'])


def pinned_grid_vertices(spec, nx: int, ny: int) -> List[int]:
    """Resolves a pinned vertex spec to vertex indices of an (nx, ny) grid."""
    if spec == PINNED_NONE:
        return []
    if spec == PINNED_LEFT_CORNERS:
        return [grid_vertex_index(nx, 0, 0), grid_vertex_index(nx, 0, ny)]
    if spec == PINNED_TOP_CORNERS:
        return [grid_vertex_index(nx, 0, ny), grid_vertex_index(nx, nx, ny)]
    if spec == PINNED_TOP_ROW:
        return [grid_vertex_index(nx, i, ny) for i in range(nx + 1)]
    count = (nx + 1) * (ny + 1)
    for index in spec:
        if index >= count:
            raise ConfigError(f(_("Pinned vertex {index} does not exist in a grid with {count} vertices.")))
    return list(spec)


def place_grid(mesh: TriMesh, placement: str, elevation: float) -> TriMesh:
    """
    Moves a grid built in the x/y plane into the scene. Vertical grids stay in the x/y plane with
    their top edge at y = elevation. Horizontal grids lie in the plane y = elevation, centred on
    the y axis, with the grid's top row at positive z.
    """
    v = mesh.vertices
    width = float(np.max(v[:, 0]))
    height = float(np.max(v[:, 1]))
    placed = np.zeros_like(v)
    if placement == VERTICAL:
        placed[:, 0] = v[:, 0]
        placed[:, 1] = v[:, 1] - height + elevation
    elif placement == HORIZONTAL:
        placed[:, 0] = v[:, 0] - width / 2
        placed[:, 1] = elevation
        placed[:, 2] = v[:, 1] - height / 2
    else:
        raise ValueError(f"Unknown placement: {placement}")
    return mesh.with_vertices(placed)


class ClothScene:
    """
    A configured scene: the hierarchy of the cloth plus everything needed to start a simulation
    on any of its levels.
    """
    def __init__(self, config: SimConfig):
        self.config = config
        entry = SCENES.get(config.scene)
        if entry is None:
            raise ConfigError(f(_("Unknown scene '{config.scene}'.")))
        self.placement: str = entry['placement']
        pinned = pinned_grid_vertices(config.pinned, config.nx, config.ny)
        grid = build_grid_mesh(config.nx, config.ny, config.width, config.height, pinned=pinned)
        base = place_grid(grid, self.placement, entry['elevation'])
        self.hierarchy: ClothHierarchy = build_hierarchy(base, config.finer_levels)
        self.primitives = config.collisions
        self.params = config.solver_params
        logger.debug("Scene %s: %s", config.scene, self.hierarchy)

    @property
    def normal(self) -> np.ndarray:
        """The rest-shape normal of the cloth plane."""
        return np.array((0.0, 0.0, 1.0)) if self.placement == VERTICAL else np.array((0.0, 1.0, 0.0))

    def external_accel(self, level: int) -> np.ndarray:
        """Wind on every vertex plus the downward load on the bottom row of vertical cloths."""
        mesh = self.hierarchy.levels[level]
        accel = np.tile(self.config.wind, (mesh.vertex_count, 1))
        if self.config.load > 0 and self.placement == VERTICAL:
            heights = mesh.vertices[:, 1]
            bottom = heights <= np.min(heights) + 1e-9 * self.config.height
            accel[bottom, 1] -= self.config.load
        return accel

    def level_state(self, level: int) -> SolverState:
        """
        The initial state on one level: at rest, optionally with the free vertices jittered along
        the cloth normal by up to config.jitter, drawn from the scene seed.
        """
        mesh = self.hierarchy.levels[level]
        state = SolverState.from_mesh(mesh, self.config.total_mass, self.external_accel(level))
        if self.config.jitter > 0:
            rng = make_rng(self.config.seed, level)
            offsets = rng.uniform(-self.config.jitter, self.config.jitter, size=mesh.vertex_count)
            free = state.free_mask
            state.positions[free] += offsets[free, None] * self.normal[None, :]
            state.predicted = state.positions.copy()
        return state

    def level_constraints(self, level: int) -> ConstraintSet:
        return build_cloth_constraints(self.hierarchy.levels[level], self.config.stretch_stiffness,
                                       self.config.bending_stiffness)

    def __str__(self):
        return f"{self.__class__.__name__}<{self.config.scene}, {self.hierarchy}>"
