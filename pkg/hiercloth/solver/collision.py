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
from typing import Sequence, Tuple, Optional

import numpy as np

from hiercloth.solver.data_types import CollisionPrimitive


def resolve_collisions(positions: np.ndarray, velocities: Optional[np.ndarray],
                       primitives: Sequence[CollisionPrimitive]) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Projects every vertex inside a primitive onto its surface along the outward normal. For those
    vertices the normal velocity component is removed and the tangential one scaled by
    (1 - friction). Primitives are handled in order. Returns new arrays; velocities may be None.
    """
    positions = positions.copy()
    if velocities is not None:
        velocities = velocities.copy()
    for primitive in primitives:
        inside, projected, normals = primitive.contacts(positions)
        if len(inside) == 0:
            continue
        positions[inside] = projected
        if velocities is not None:
            v = velocities[inside]
            normal_part = np.sum(v * normals, axis=1)[:, None] * normals
            velocities[inside] = (v - normal_part) * (1.0 - primitive.friction)
    return positions, velocities
