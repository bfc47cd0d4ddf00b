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

from hiercloth.error import HierarchyError
from hiercloth.mesh.hierarchy import build_hierarchy, subdivide
from hiercloth.mesh.trimesh import build_grid_mesh, grid_vertex_index


def brute_force_counts(mesh):
    used = set(mesh.triangles.reshape(-1).tolist())
    edges = set()
    for p, q, r in mesh.triangles.tolist():
        for a, b in ((p, q), (q, r), (r, p)):
            edges.add(frozenset((a, b)))
    return len(used), len(edges), len(mesh.triangles)


class HierarchyCountsTestCase(unittest.TestCase):
    def test_counts(self):
        for n in (2, 8, 16):
            hierarchy = build_hierarchy(build_grid_mesh(n, n, 1.0, 1.0), 2)
            self.assertEqual(3, len(hierarchy.levels))
            for i in range(2):
                coarse, fine = hierarchy.levels[i], hierarchy.levels[i + 1]
                self.assertEqual(coarse.vertex_count + coarse.edge_count, fine.vertex_count)
                self.assertEqual(2 * coarse.edge_count + 3 * coarse.triangle_count, fine.edge_count)
                self.assertEqual(4 * coarse.triangle_count, fine.triangle_count)
            for level in hierarchy.levels:
                self.assertEqual((level.vertex_count, level.edge_count, level.triangle_count),
                                 brute_force_counts(level))
                self.assertEqual(1, level.euler_characteristic())

    def test_level_one_of_small_grid(self):
        hierarchy = build_hierarchy(build_grid_mesh(2, 2, 1.0, 1.0), 1)
        self.assertEqual(25, hierarchy.finest.vertex_count)
        self.assertEqual(32, hierarchy.finest.triangle_count)

    def test_zero_levels(self):
        base = build_grid_mesh(2, 2, 1.0, 1.0)
        hierarchy = build_hierarchy(base, 0)
        self.assertEqual(0, hierarchy.finer_levels)
        self.assertIs(base, hierarchy.coarsest)
        self.assertIs(base, hierarchy.finest)

    def test_invalid_level_count(self):
        base = build_grid_mesh(1, 1, 1.0, 1.0)
        self.assertRaises(ValueError, build_hierarchy, base, -1)
        self.assertRaises(HierarchyError, build_hierarchy, base, 3, 2)


class HierarchyMapsTestCase(unittest.TestCase):
    def setUp(self):
        self.hierarchy = build_hierarchy(build_grid_mesh(3, 2, 1.5, 1.0), 2)

    def test_coarse_vertices_keep_index(self):
        for i in range(2):
            coarse, fine = self.hierarchy.levels[i], self.hierarchy.levels[i + 1]
            np.testing.assert_array_equal(coarse.vertices, fine.vertices[:coarse.vertex_count])
            np.testing.assert_array_equal(coarse.vertices, self.hierarchy.restrict(fine.vertices, i))

    def test_midpoints(self):
        for i in range(2):
            coarse, fine = self.hierarchy.levels[i], self.hierarchy.levels[i + 1]
            for e, (a, b) in enumerate(coarse.edges.tolist()):
                m = self.hierarchy.edge_to_midpoint[i][e]
                np.testing.assert_array_equal((coarse.vertices[a] + coarse.vertices[b]) / 2, fine.vertices[m])

    def test_slot_order(self):
        coarse, fine = self.hierarchy.levels[0], self.hierarchy.levels[1]
        for t, (p, q, r) in enumerate(coarse.triangles.tolist()):
            mids = self.hierarchy.triangle_midpoints[0][t]
            for slot, (a, b) in enumerate(((p, q), (q, r), (r, p))):
                np.testing.assert_array_equal((coarse.vertices[a] + coarse.vertices[b]) / 2,
                                              fine.vertices[mids[slot]])

    def test_child_triangles(self):
        coarse, fine = self.hierarchy.levels[0], self.hierarchy.levels[1]
        for t, corners in enumerate(coarse.triangles.tolist()):
            children = fine.triangles[self.hierarchy.child_triangles[0][t]]
            for corner in corners:
                self.assertEqual(1, int(np.sum(np.any(children == corner, axis=1))))
            # The fourth child is made of the three midpoints.
            self.assertEqual(set(self.hierarchy.triangle_midpoints[0][t].tolist()), set(children[3].tolist()))

    def test_contributors(self):
        for i in range(2):
            mesh = self.hierarchy.levels[i]
            contributors = self.hierarchy.midpoint_contributors[i]
            boundary = set(mesh.boundary_edges().tolist())
            for e in range(mesh.edge_count):
                self.assertGreaterEqual(contributors[e, 0], 0)
                if e in boundary:
                    self.assertEqual(-1, contributors[e, 1])
                else:
                    self.assertLess(contributors[e, 0] // 3, contributors[e, 1] // 3)
                for slot in contributors[e]:
                    if slot >= 0:
                        t, s = divmod(int(slot), 3)
                        self.assertEqual(e, mesh.triangle_edges[t, s])

    def test_pins_propagate(self):
        pinned = [grid_vertex_index(2, 0, 2), grid_vertex_index(2, 2, 2)]
        hierarchy = build_hierarchy(build_grid_mesh(2, 2, 1.0, 1.0, pinned), 2)
        for level in hierarchy.levels:
            self.assertEqual(sorted(pinned), level.pinned_indices.tolist())

    def test_subdivide_maps(self):
        base = build_grid_mesh(1, 1, 1.0, 1.0)
        fine, edge_to_midpoint, children = subdivide(base)
        self.assertEqual(list(range(4, 9)), edge_to_midpoint.tolist())
        self.assertEqual((2, 4), children.shape)
        self.assertEqual(list(range(8)), children.reshape(-1).tolist())
