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
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from hiercloth.error import HierarchyError, InferenceError
from hiercloth.mesh.hierarchy import ClothHierarchy
from hiercloth.neural.model import MlpModel, forward, FEATURE_SIZE
from hiercloth.util import split_evenly, f, _

logger = logging.getLogger(__name__)


def extract_features(triangle: Sequence[int], positions: np.ndarray, rest_positions: np.ndarray) -> np.ndarray:
    """The input feature vector of one triangle: its corner displacements from rest, in stored corner order."""
    corners = np.asarray(triangle, dtype=np.int64)
    return (positions[corners] - rest_positions[corners]).reshape(FEATURE_SIZE)


def level_features(triangles: np.ndarray, positions: np.ndarray, rest_positions: np.ndarray) -> np.ndarray:
    """extract_features for all triangles of a level at once, as (T, 9) array."""
    displacement = positions - rest_positions
    return displacement[triangles].reshape(len(triangles), FEATURE_SIZE)


def apply_outputs(hierarchy: ClothHierarchy, fine_level: int, outputs: np.ndarray,
                  coarse_positions: np.ndarray) -> np.ndarray:
    """
    Positions of level `fine_level` (= i + 1) from one output vector per level-i triangle.

    Inherited vertices copy their level-i positions. Every midpoint vertex gets its rest position
    plus the mean of the output slots targeting it: (c1 + c2) / 2 for interior edges, c1 unchanged
    for boundary edges. Contributions are reduced in ascending parent triangle order.

    :raises: HierarchyError: If a midpoint has no contributing triangle.
    """
    coarse = fine_level - 1
    coarse_mesh = hierarchy.levels[coarse]
    if outputs.shape != (coarse_mesh.triangle_count, 9):
        raise ValueError(f"Expected {coarse_mesh.triangle_count} output vectors, got array of shape {outputs.shape}.")
    contributors = hierarchy.midpoint_contributors[coarse]
    if np.any(contributors[:, 0] < 0):
        missing = int(np.count_nonzero(contributors[:, 0] < 0))
        raise HierarchyError(f(_("{missing} midpoint(s) of level {fine_level} have no contributing triangle.")))
    slots = outputs.reshape(-1, 3)
    first = slots[contributors[:, 0]]
    second_index = contributors[:, 1]
    shared = second_index >= 0
    displacement = first.copy()
    displacement[shared] = (first[shared] + slots[second_index[shared]]) / 2

    fine_rest = hierarchy.rest_positions(fine_level)
    positions = np.empty_like(fine_rest)
    positions[:coarse_mesh.vertex_count] = coarse_positions[:coarse_mesh.vertex_count]
    midpoints = hierarchy.edge_to_midpoint[coarse]
    positions[midpoints] = fine_rest[midpoints] + displacement
    return positions


def infer_level(model: MlpModel, hierarchy: ClothHierarchy, positions: np.ndarray,
                workers: int = 1, executor: ThreadPoolExecutor = None) -> np.ndarray:
    """
    Infers the positions of level model.level_index from the positions of the level below.
    With more than one worker the triangles are split into contiguous chunks evaluated in
    parallel; each chunk writes its own rows, so the result does not depend on the split.

    :raises: InferenceError: If the network output is not finite.
    """
    fine_level = model.level_index
    coarse = fine_level - 1
    if coarse < 0 or fine_level > hierarchy.finer_levels:
        raise ValueError(f"Model targets level {fine_level}, which is not a finer level of {hierarchy}.")
    mesh = hierarchy.levels[coarse]
    features = level_features(mesh.triangles, positions[:mesh.vertex_count], mesh.vertices)
    outputs = np.empty((mesh.triangle_count, 9))

    def run_chunk(bounds):
        start, stop = bounds
        outputs[start:stop] = forward(model, features[start:stop])

    chunks = split_evenly(mesh.triangle_count, workers)
    if len(chunks) <= 1:
        for chunk in chunks:
            run_chunk(chunk)
    elif executor is not None:
        list(executor.map(run_chunk, chunks))
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            list(pool.map(run_chunk, chunks))

    bad = ~np.all(np.isfinite(outputs), axis=1)
    if np.any(bad):
        raise InferenceError(fine_level, int(np.count_nonzero(bad)))
    return apply_outputs(hierarchy, fine_level, outputs, positions)
