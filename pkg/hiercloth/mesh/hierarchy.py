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
from typing import List, Tuple

import numpy as np

from hiercloth.error import HierarchyError
from hiercloth.mesh.trimesh import TriMesh
from hiercloth.util import f, _

logger = logging.getLogger(__name__)

# Guard against runaway memory: every level has four times the triangles of the previous one.
DEFAULT_MAX_FINER_LEVELS = 8


def subdivide(mesh: TriMesh) -> Tuple[TriMesh, np.ndarray, np.ndarray]:
    """
    Splits every triangle into four by inserting one vertex at the midpoint of each edge.

    Returns the subdivided mesh, the edge-to-midpoint map (level-i edge index -> level-(i+1)
    vertex index) and the child triangle map ((F, 4) level-(i+1) triangle indices per
    level-i triangle).

    The new vertex list is the old vertex list followed by one midpoint per edge, in edge order.
    A triangle (p, q, r) with midpoints (mpq, mqr, mrp) yields the children
    (p, mpq, mrp), (q, mqr, mpq), (r, mrp, mqr), (mpq, mqr, mrp).
    """
    v = mesh.vertex_count
    edges = mesh.edges
    rest = mesh.vertices
    midpoints = (rest[edges[:, 0]] + rest[edges[:, 1]]) / 2
    vertices = np.concatenate([rest, midpoints])
    edge_to_midpoint = v + np.arange(mesh.edge_count, dtype=np.int64)

    p, q, r = mesh.triangles[:, 0], mesh.triangles[:, 1], mesh.triangles[:, 2]
    mpq = edge_to_midpoint[mesh.triangle_edges[:, 0]]
    mqr = edge_to_midpoint[mesh.triangle_edges[:, 1]]
    mrp = edge_to_midpoint[mesh.triangle_edges[:, 2]]
    children = np.stack([
        np.stack([p, mpq, mrp], axis=1),
        np.stack([q, mqr, mpq], axis=1),
        np.stack([r, mrp, mqr], axis=1),
        np.stack([mpq, mqr, mrp], axis=1),
    ], axis=1)  # (F, 4, 3)
    triangles = children.reshape(-1, 3)
    child_triangles = np.arange(4 * mesh.triangle_count, dtype=np.int64).reshape(-1, 4)

    fine = TriMesh(vertices, triangles, pinned=mesh.pinned)
    return fine, edge_to_midpoint, child_triangles


class ClothHierarchy:
    """
    The levels l_0 .. l_N of a hierarchical cloth model.

    Level i+1 is the midpoint subdivision of level i. Coarse vertices keep their index at every
    finer level, so the positions of level i are the first vertex_count(l_i) rows of the
    positions of any finer level.

    Immutable after construction.
    """
    def __init__(self, levels: List[TriMesh], edge_to_midpoint: List[np.ndarray],
                 child_triangles: List[np.ndarray]):
        if len(levels) < 1:
            raise HierarchyError(_("A hierarchy needs at least one level."))
        if len(edge_to_midpoint) != len(levels) - 1 or len(child_triangles) != len(levels) - 1:
            raise HierarchyError(_("Hierarchy maps must exist for every level but the finest."))
        self.levels: List[TriMesh] = levels
        # edge_to_midpoint[i][e]: level-(i+1) vertex inserted at the midpoint of level-i edge e.
        self.edge_to_midpoint: List[np.ndarray] = edge_to_midpoint
        # child_triangles[i][t]: the four level-(i+1) triangles spawned by level-i triangle t.
        self.child_triangles: List[np.ndarray] = child_triangles
        # triangle_midpoints[i][t, s]: level-(i+1) vertex targeted by output slot s of level-i
        # triangle t. Slot 0 = midpoint of (p,q), slot 1 = (q,r), slot 2 = (r,p).
        self.triangle_midpoints: List[np.ndarray] = []
        # midpoint_contributors[i][e]: flat output slots (t * 3 + s) targeting the midpoint of edge e,
        # ascending by triangle, -1 if there is no second contributor.
        self.midpoint_contributors: List[np.ndarray] = []
        for i in range(len(levels) - 1):
            tri_mid = edge_to_midpoint[i][levels[i].triangle_edges]
            tri_mid.flags.writeable = False
            self.triangle_midpoints.append(tri_mid)
            contributors = self._collect_contributors(levels[i])
            contributors.flags.writeable = False
            self.midpoint_contributors.append(contributors)

    @property
    def finer_levels(self) -> int:
        return len(self.levels) - 1

    @property
    def finest(self) -> TriMesh:
        return self.levels[-1]

    @property
    def coarsest(self) -> TriMesh:
        return self.levels[0]

    def rest_positions(self, level: int) -> np.ndarray:
        return self.levels[level].vertices

    def restrict(self, positions: np.ndarray, level: int) -> np.ndarray:
        """Restricts positions of any finer level to the vertices of the given level."""
        return positions[:self.levels[level].vertex_count]

    @staticmethod
    def _collect_contributors(mesh: TriMesh) -> np.ndarray:
        flat_edges = mesh.triangle_edges.reshape(-1)
        slots = np.arange(len(flat_edges), dtype=np.int64)
        # Sorting by (edge, slot) keeps contributors in ascending triangle order.
        order = np.lexsort((slots, flat_edges))
        flat_edges = flat_edges[order]
        slots = slots[order]
        counts = np.bincount(flat_edges, minlength=mesh.edge_count)
        if np.any(counts > 2):
            raise HierarchyError(_("Non-manifold edge: more than two triangles share an edge."))
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]]).astype(np.int64)
        contributors = np.full((mesh.edge_count, 2), -1, dtype=np.int64)
        has_one = counts >= 1
        has_two = counts == 2
        contributors[has_one, 0] = slots[starts[has_one]]
        contributors[has_two, 1] = slots[starts[has_two] + 1]
        return contributors

    def __str__(self):
        counts = ', '.join(str(level.vertex_count) for level in self.levels)
        return f"{self.__class__.__name__}<levels={len(self.levels)}, vertices=[{counts}]>"

    def __repr__(self):
        return str(self)


def build_hierarchy(base: TriMesh, finer_levels: int,
                    max_finer_levels: int = DEFAULT_MAX_FINER_LEVELS) -> ClothHierarchy:
    """
    Builds the hierarchy l_0 = base, l_{i+1} = subdivide(l_i) for i < finer_levels.
    Pinned vertices of the base are pinned at every level.
    """
    if finer_levels < 0:
        raise ValueError(f(_("The number of finer levels must not be negative (got {finer_levels}).")))
    if finer_levels > max_finer_levels:
        raise HierarchyError(f(_("Refusing to build {finer_levels} finer levels "
                                 "(limit: {max_finer_levels}).")))
    levels = [base]
    edge_to_midpoint = []
    child_triangles = []
    for i in range(finer_levels):
        logger.debug("Subdividing level %d (%d triangles)...", i, levels[-1].triangle_count)
        fine, e2m, children = subdivide(levels[-1])
        levels.append(fine)
        edge_to_midpoint.append(e2m)
        child_triangles.append(children)
    return ClothHierarchy(levels, edge_to_midpoint, child_triangles)
