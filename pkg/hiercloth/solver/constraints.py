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
from typing import List, Sequence

import numpy as np
import scipy.sparse as sp

from hiercloth.mesh.trimesh import TriMesh
from hiercloth.util import f, _

logger = logging.getLogger(__name__)


class ConstraintKind(Enum):
    SPRING = 0
    BENDING = 1


class Constraint:
    """
    A distance constraint between two vertices with energy 1/2 k (|x_a - x_b| - rest_length)^2.
    Bending constraints are cross-edge springs between the two vertices opposite an interior edge.
    """
    def __init__(self, kind: ConstraintKind, a: int, b: int, rest_length: float, stiffness: float):
        if not rest_length > 0:
            raise ValueError(f(_("Constraint rest length must be positive (got {rest_length}).")))
        if not stiffness >= 0:
            raise ValueError(f(_("Constraint stiffness must not be negative (got {stiffness}).")))
        if a == b:
            raise ValueError(_("A constraint needs two distinct vertices."))
        self.kind = kind
        self.a = int(a)
        self.b = int(b)
        self.rest_length = float(rest_length)
        self.stiffness = float(stiffness)

    def __str__(self):
        return f"{self.__class__.__name__}<{self.kind.name}({self.a}, {self.b}), " \
               f"L={self.rest_length}, k={self.stiffness}>"

    def __repr__(self):
        return str(self)

    def __eq__(self, other):
        if not isinstance(other, Constraint):
            return False
        return self.kind == other.kind and self.a == other.a and self.b == other.b and \
            self.rest_length == other.rest_length and self.stiffness == other.stiffness


class ConstraintSet:
    """
    All constraints of a scene in array form, plus their ADMM auxiliaries.

    kinds, a, b, rest_length, stiffness: (m,) arrays.
    weight: ADMM weight w = sqrt(stiffness) per constraint.
    z, u: (m, 3) slack and scaled dual variables, in the projection space D x = x_a - x_b.
    incidence: sparse (m, n) matrix D with +1 at a and -1 at b.
    """
    def __init__(self, constraints: Sequence[Constraint], vertex_count: int):
        # Zero-stiffness constraints contribute nothing.
        constraints = [c for c in constraints if c.stiffness > 0]
        for c in constraints:
            if c.a >= vertex_count or c.b >= vertex_count or c.a < 0 or c.b < 0:
                raise ValueError(f(_("Constraint {c} references a vertex outside 0..{vertex_count}.")))
        m = len(constraints)
        self.vertex_count = vertex_count
        self.kinds = np.array([c.kind.value for c in constraints], dtype=np.int8)
        self.a = np.array([c.a for c in constraints], dtype=np.int64)
        self.b = np.array([c.b for c in constraints], dtype=np.int64)
        self.rest_length = np.array([c.rest_length for c in constraints], dtype=np.float64)
        self.stiffness = np.array([c.stiffness for c in constraints], dtype=np.float64)
        self.weight = np.sqrt(self.stiffness)
        self.z = np.zeros((m, 3))
        self.u = np.zeros((m, 3))
        rows = np.concatenate([np.arange(m), np.arange(m)])
        cols = np.concatenate([self.a, self.b])
        data = np.concatenate([np.ones(m), -np.ones(m)])
        self.incidence = sp.csr_matrix((data, (rows, cols)), shape=(m, vertex_count))
        self._initialized = False

    def __len__(self):
        return len(self.a)

    @property
    def is_empty(self) -> bool:
        return len(self.a) == 0

    def reset_auxiliaries(self, positions: np.ndarray):
        """Cold start: z = D x, u = 0."""
        self.z = self.incidence @ positions
        self.u = np.zeros_like(self.z)
        self._initialized = True

    def prepare_step(self, positions: np.ndarray, warm_start: bool):
        """Brings z and u into a consistent state at the start of a step."""
        if not warm_start or not self._initialized:
            self.reset_auxiliaries(positions)

    def constraints(self) -> List[Constraint]:
        return [Constraint(ConstraintKind(int(k)), int(a), int(b), float(l), float(s))
                for k, a, b, l, s in zip(self.kinds, self.a, self.b, self.rest_length, self.stiffness)]

    def count(self, kind: ConstraintKind) -> int:
        return int(np.count_nonzero(self.kinds == kind.value))

    def __str__(self):
        return f"{self.__class__.__name__}<springs={self.count(ConstraintKind.SPRING)}, " \
               f"bending={self.count(ConstraintKind.BENDING)}>"


def bending_pairs(mesh: TriMesh) -> np.ndarray:
    """
    For every interior edge, the two vertices opposite to it in its adjacent triangles,
    as (k, 2) array ordered by edge index.
    """
    dual = mesh.triangle_adjacency_graph()
    pairs = []
    for e in dual.es:
        a, b = mesh.edges[e['mesh_edge']]
        opposite = []
        for tri in (e.source, e.target):
            corners = mesh.triangles[tri]
            opposite.append(int(corners[(corners != a) & (corners != b)][0]))
        pairs.append(opposite)
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)


def build_cloth_constraints(mesh: TriMesh, stretch_stiffness: float, bending_stiffness: float,
                            rest_positions: np.ndarray = None) -> ConstraintSet:
    """
    Mass-spring constraints on every mesh edge and bending (cross-edge spring) constraints on every
    interior edge, with rest lengths measured on the rest positions.
    """
    if rest_positions is None:
        rest_positions = mesh.vertices
    constraints = []
    for a, b in mesh.edges.tolist():
        length = float(np.linalg.norm(rest_positions[a] - rest_positions[b]))
        constraints.append(Constraint(ConstraintKind.SPRING, a, b, length, stretch_stiffness))
    if bending_stiffness > 0:
        for c, d in bending_pairs(mesh).tolist():
            length = float(np.linalg.norm(rest_positions[c] - rest_positions[d]))
            constraints.append(Constraint(ConstraintKind.BENDING, c, d, length, bending_stiffness))
    result = ConstraintSet(constraints, mesh.vertex_count)
    logger.debug("Built constraints for %s: %s", mesh, result)
    return result
