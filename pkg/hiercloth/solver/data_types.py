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
from abc import ABC, abstractmethod
from typing import Iterable, Optional, Tuple

import numpy as np

from hiercloth.mesh.trimesh import TriMesh
from hiercloth.util import f, _

DEFAULT_DT = 1.0 / 150.0
DEFAULT_GRAVITY = (0.0, -9.8, 0.0)
DEFAULT_TOTAL_MASS = 0.5
DEFAULT_ADMM_ITERATIONS = 20
DEFAULT_CG_ITERATIONS = 100
DEFAULT_CG_TOLERANCE = 1e-8


class SolverParams:
    """Time stepping parameters of the coarse solver."""
    def __init__(self, dt: float = DEFAULT_DT, gravity: Iterable[float] = DEFAULT_GRAVITY,
                 admm_iterations: int = DEFAULT_ADMM_ITERATIONS, cg_iterations: int = DEFAULT_CG_ITERATIONS,
                 cg_tolerance: float = DEFAULT_CG_TOLERANCE, damping: float = 0.0, warm_start=True):
        if not dt > 0:
            raise ValueError(f(_("Time step must be positive (got {dt}).")))
        if admm_iterations < 1 or cg_iterations < 1:
            raise ValueError(_("Iteration counts must be at least 1."))
        if not 0 <= damping < 1:
            raise ValueError(f(_("Damping must be in [0, 1) (got {damping}).")))
        self.dt = float(dt)
        self.gravity = np.array(gravity, dtype=np.float64).reshape(3)
        self.admm_iterations = int(admm_iterations)
        self.cg_iterations = int(cg_iterations)
        self.cg_tolerance = float(cg_tolerance)
        # Fraction of the end-of-step velocity removed each step.
        self.damping = float(damping)
        # Keep ADMM slack / dual variables from the previous frame.
        self.warm_start = bool(warm_start)

    def __str__(self):
        return f"{self.__class__.__name__}<dt={self.dt}, admm={self.admm_iterations}, cg={self.cg_iterations}>"


class SolverState:
    """
    The dynamic state of the coarsest level.

    positions, velocities, predicted: (n, 3) arrays. masses: (n,) lumped masses.
    external_accel: optional (n, 3) per-vertex acceleration added to gravity.
    """
    def __init__(self, positions, velocities, masses, pinned: Iterable[int] = (),
                 external_accel=None, time: float = 0.0):
        self.positions = np.array(positions, dtype=np.float64).reshape(-1, 3)
        n = len(self.positions)
        self.velocities = np.array(velocities, dtype=np.float64).reshape(-1, 3)
        self.masses = np.array(masses, dtype=np.float64).reshape(-1)
        if len(self.velocities) != n or len(self.masses) != n:
            raise ValueError(_("Positions, velocities and masses must have the same length."))
        if np.any(self.masses <= 0):
            raise ValueError(_("All vertex masses must be positive."))
        self.pinned = np.array(sorted(set(int(p) for p in pinned)), dtype=np.int64)
        # The prescribed positions of pinned vertices. Restored bit for bit after every step.
        self.pin_positions = self.positions[self.pinned].copy()
        self.velocities[self.pinned] = 0.0
        self.external_accel: Optional[np.ndarray] = None
        if external_accel is not None:
            self.external_accel = np.array(external_accel, dtype=np.float64).reshape(n, 3)
        self.predicted = self.positions.copy()
        self.time = float(time)

    @classmethod
    def from_mesh(cls, mesh: TriMesh, total_mass: float = DEFAULT_TOTAL_MASS,
                  external_accel=None) -> 'SolverState':
        """A state at rest in the mesh's rest shape with the total mass spread uniformly."""
        if not total_mass > 0:
            raise ValueError(f(_("Total mass must be positive (got {total_mass}).")))
        n = mesh.vertex_count
        return cls(mesh.vertices.copy(), np.zeros((n, 3)), np.full(n, total_mass / n),
                   mesh.pinned, external_accel)

    @property
    def vertex_count(self) -> int:
        return len(self.positions)

    @property
    def free_mask(self) -> np.ndarray:
        mask = np.ones(self.vertex_count, dtype=bool)
        mask[self.pinned] = False
        return mask

    def enforce_pins(self):
        self.positions[self.pinned] = self.pin_positions
        self.velocities[self.pinned] = 0.0

    def copy(self) -> 'SolverState':
        state = SolverState.__new__(SolverState)
        state.positions = self.positions.copy()
        state.velocities = self.velocities.copy()
        state.masses = self.masses.copy()
        state.pinned = self.pinned.copy()
        state.pin_positions = self.pin_positions.copy()
        state.external_accel = None if self.external_accel is None else self.external_accel.copy()
        state.predicted = self.predicted.copy()
        state.time = self.time
        return state

    def __str__(self):
        return f"{self.__class__.__name__}<n={self.vertex_count}, t={self.time:.4f}>"


class CollisionPrimitive(ABC):
    """An external collision object. Vertices inside are pushed out along the outward normal."""
    kind: str = 'abstract'

    def __init__(self, friction: float):
        if not 0 <= friction <= 1:
            raise ValueError(f(_("Friction must be in [0, 1] (got {friction}).")))
        self.friction = float(friction)

    @abstractmethod
    def contacts(self, positions: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Returns (indices of penetrating vertices, their projected surface positions,
        the unit outward normals at those positions).
        """
        pass


class Sphere(CollisionPrimitive):
    kind = 'sphere'

    def __init__(self, center: Iterable[float], radius: float, friction: float = 0.0):
        super().__init__(friction)
        if not radius > 0:
            raise ValueError(f(_("Sphere radius must be positive (got {radius}).")))
        self.center = np.array(center, dtype=np.float64).reshape(3)
        self.radius = float(radius)

    def contacts(self, positions):
        offsets = positions - self.center
        distances = np.linalg.norm(offsets, axis=1)
        inside = np.nonzero(distances < self.radius)[0]
        offsets = offsets[inside]
        distances = distances[inside]
        normals = np.zeros_like(offsets)
        nonzero = distances > 0
        normals[nonzero] = offsets[nonzero] / distances[nonzero, None]
        # A vertex exactly at the center is pushed straight up.
        normals[~nonzero] = (0.0, 1.0, 0.0)
        return inside, self.center + self.radius * normals, normals

    def __str__(self):
        return f"Sphere<c={self.center.tolist()}, r={self.radius}, mu={self.friction}>"


class HalfSpace(CollisionPrimitive):
    """The solid region {x : normal . x < offset}; the surface is the plane normal . x = offset."""
    kind = 'half-space'

    def __init__(self, normal: Iterable[float], offset: float, friction: float = 0.0):
        super().__init__(friction)
        normal = np.array(normal, dtype=np.float64).reshape(3)
        length = np.linalg.norm(normal)
        if not length > 0:
            raise ValueError(_("Half-space normal must not be zero."))
        if abs(length - 1.0) > 1e-12:
            normal = normal / length
        self.normal = normal
        self.offset = float(offset)

    def contacts(self, positions):
        heights = positions @ self.normal - self.offset
        inside = np.nonzero(heights < 0)[0]
        projected = positions[inside] - heights[inside, None] * self.normal
        # Snap exactly onto the plane along axis-aligned normals.
        axis = np.nonzero(self.normal == 1.0)[0]
        if len(axis) == 1:
            projected[:, axis[0]] = self.offset
        normals = np.broadcast_to(self.normal, projected.shape).copy()
        return inside, projected, normals

    def __str__(self):
        return f"HalfSpace<n={self.normal.tolist()}, d={self.offset}, mu={self.friction}>"
