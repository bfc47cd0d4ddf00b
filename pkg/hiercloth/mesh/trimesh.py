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
from typing import Iterable, Optional

import numpy as np
from igraph import Graph

from hiercloth.error import HierarchyError
from hiercloth.util import f, _

logger = logging.getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def deduplicate_edges(triangles: np.ndarray, vertex_count: int) -> np.ndarray:
    """
    Returns the unique undirected edges of the triangles as (E, 2) array with a < b per row,
    sorted lexicographically.
    """
    if len(triangles) == 0:
        return np.zeros((0, 2), dtype=np.int64)
    pairs = np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
    pairs = np.sort(pairs, axis=1)
    keys = np.unique(pairs[:, 0] * vertex_count + pairs[:, 1])
    return np.stack([keys // vertex_count, keys % vertex_count], axis=1).astype(np.int64)


class TriMesh:
    """
    An immutable triangle mesh with rest positions.

    vertices:   (V, 3) rest positions in meters.
    triangles:  (F, 3) vertex indices. The stored corner order is the order used for
                feature and output vectors of the networks.
    edges:      (E, 2) deduplicated undirected edges, a < b, lexicographically sorted.
    pinned:     Indices of vertices with prescribed positions.
    """
    def __init__(self, vertices, triangles, edges=None, pinned: Iterable[int] = ()):
        vertices = np.array(vertices, dtype=np.float64).reshape(-1, 3)
        triangles = np.array(triangles, dtype=np.int64).reshape(-1, 3)
        vertex_count = len(vertices)
        if len(triangles) > 0 and (triangles.min() < 0 or triangles.max() >= vertex_count):
            raise HierarchyError(f(_("Triangle vertex index out of range (vertex count: {vertex_count}).")))
        if edges is None:
            edges = deduplicate_edges(triangles, vertex_count)
        else:
            edges = np.array(edges, dtype=np.int64).reshape(-1, 2)
        pinned = frozenset(int(p) for p in pinned)
        for p in pinned:
            if p < 0 or p >= vertex_count:
                raise HierarchyError(f(_("Pinned vertex {p} does not exist.")))

        self.vertices: np.ndarray = _frozen(vertices)
        self.triangles: np.ndarray = _frozen(triangles)
        self.edges: np.ndarray = _frozen(edges)
        self.pinned: frozenset = pinned
        # For each triangle (p, q, r): index of the edges (p,q), (q,r), (r,p).
        self.triangle_edges: np.ndarray = _frozen(self._find_triangle_edges())

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)

    @property
    def pinned_indices(self) -> np.ndarray:
        return np.array(sorted(self.pinned), dtype=np.int64)

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.triangle_count

    def to_graph(self) -> Graph:
        """The vertex / edge graph of the mesh. Edge ids equal the row indices of `edges`."""
        return Graph(n=self.vertex_count, edges=self.edges.tolist())

    def is_connected(self) -> bool:
        return self.to_graph().is_connected()

    def triangle_adjacency_graph(self) -> Graph:
        """
        The dual graph of the mesh: one graph vertex per triangle, one graph edge per interior
        mesh edge, connecting the two triangles sharing it. The attribute "mesh_edge" holds the
        index of the shared mesh edge. Graph edges are ordered by mesh edge index.
        """
        flat_edges = self.triangle_edges.reshape(-1)
        owners = np.repeat(np.arange(self.triangle_count), 3)
        order = np.argsort(flat_edges, kind='stable')
        flat_edges = flat_edges[order]
        owners = owners[order]
        counts = np.bincount(flat_edges, minlength=self.edge_count)
        if np.any(counts > 2):
            raise HierarchyError(_("Non-manifold edge: more than two triangles share an edge."))
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
        interior = np.nonzero(counts == 2)[0]
        g = Graph(n=self.triangle_count)
        g.add_edges(list(zip(owners[starts[interior]].tolist(), owners[starts[interior] + 1].tolist())))
        g.es['mesh_edge'] = interior.tolist()
        return g

    def boundary_edges(self) -> np.ndarray:
        counts = np.bincount(self.triangle_edges.reshape(-1), minlength=self.edge_count)
        return np.nonzero(counts == 1)[0]

    def edge_index(self, a: int, b: int) -> int:
        """Index of the undirected edge (a, b). Raises HierarchyError if it does not exist."""
        if a > b:
            a, b = b, a
        keys = self.edges[:, 0] * self.vertex_count + self.edges[:, 1]
        key = a * self.vertex_count + b
        idx = int(np.searchsorted(keys, key))
        if idx >= len(keys) or keys[idx] != key:
            raise HierarchyError(f(_("Edge ({a}, {b}) is not part of the mesh.")))
        return idx

    def with_vertices(self, vertices) -> 'TriMesh':
        """Same topology and pins, new rest positions."""
        return TriMesh(vertices, self.triangles, self.edges, self.pinned)

    def with_pinned(self, pinned: Iterable[int]) -> 'TriMesh':
        return TriMesh(self.vertices, self.triangles, self.edges, pinned)

    def _find_triangle_edges(self) -> np.ndarray:
        if self.triangle_count == 0:
            return np.zeros((0, 3), dtype=np.int64)
        v = self.vertex_count
        keys = self.edges[:, 0] * v + self.edges[:, 1]
        if np.any(np.diff(keys) <= 0):
            raise HierarchyError(_("Mesh edges must be deduplicated and sorted."))
        result = np.empty((self.triangle_count, 3), dtype=np.int64)
        for slot, (i, j) in enumerate(((0, 1), (1, 2), (2, 0))):
            a = np.minimum(self.triangles[:, i], self.triangles[:, j])
            b = np.maximum(self.triangles[:, i], self.triangles[:, j])
            tri_keys = a * v + b
            idx = np.searchsorted(keys, tri_keys)
            idx_clipped = np.minimum(idx, len(keys) - 1)
            if len(keys) == 0 or np.any(keys[idx_clipped] != tri_keys):
                raise HierarchyError(_("A triangle edge is missing from the edge list."))
            result[:, slot] = idx
        return result

    def __str__(self):
        return f"{self.__class__.__name__}<V={self.vertex_count}, E={self.edge_count}, " \
               f"F={self.triangle_count}, pinned={len(self.pinned)}>"

    def __repr__(self):
        return str(self)


def grid_vertex_index(nx: int, i: int, j: int) -> int:
    """Index of lattice point (i, j) in a grid built by build_grid_mesh."""
    return j * (nx + 1) + i


def build_grid_mesh(nx: int, ny: int, width: float, height: float,
                    pinned: Optional[Iterable[int]] = None, symmetric=False) -> TriMesh:
    """
    A regular (nx+1) x (ny+1) lattice in the x/y plane (z = 0), spanning [0, width] x [0, height].
    Vertex (i, j) has index j * (nx + 1) + i.

    Every quad is split along its lower-left to upper-right diagonal. If symmetric is True,
    the quads in the right half use the mirrored diagonal instead, which makes the mesh
    mirror symmetric about x = width / 2 for even nx.
    """
    if nx < 1 or ny < 1:
        raise ValueError(f(_("Grid cell counts must be at least 1 (got {nx} x {ny}).")))
    if not width > 0 or not height > 0:
        raise ValueError(f(_("Grid dimensions must be positive (got {width} x {height}).")))

    ii, jj = np.meshgrid(np.arange(nx + 1), np.arange(ny + 1))
    vertices = np.zeros(((nx + 1) * (ny + 1), 3), dtype=np.float64)
    vertices[:, 0] = width * ii.reshape(-1) / nx
    vertices[:, 1] = height * jj.reshape(-1) / ny

    triangles = []
    for j in range(ny):
        for i in range(nx):
            v00 = grid_vertex_index(nx, i, j)
            v10 = grid_vertex_index(nx, i + 1, j)
            v01 = grid_vertex_index(nx, i, j + 1)
            v11 = grid_vertex_index(nx, i + 1, j + 1)
            if symmetric and 2 * i >= nx:
                triangles.append((v00, v10, v01))
                triangles.append((v10, v11, v01))
            else:
                triangles.append((v00, v10, v11))
                triangles.append((v00, v11, v01))

    logger.debug("Built %dx%d grid mesh (%d vertices).", nx, ny, len(vertices))
    return TriMesh(vertices, triangles, pinned=pinned if pinned is not None else ())
