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

import numpy as np

from hiercloth.util import open_utf8

logger = logging.getLogger(__name__)


def format_obj(positions: np.ndarray, triangles: np.ndarray) -> str:
    """
    Wavefront OBJ text with one `v` line per vertex and one `f` line per triangle (1-based).
    Coordinates are written as their shortest repr, so the text round-trips float64 exactly
    and identical input always gives identical bytes.
    """
    lines = [f"v {x!r} {y!r} {z!r}" for x, y, z in
             ((float(p[0]), float(p[1]), float(p[2])) for p in positions)]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in np.asarray(triangles).tolist()]
    return '\n'.join(lines) + '\n'


def write_obj(path: str, positions: np.ndarray, triangles: np.ndarray):
    """
    Writes an OBJ file.

    :raises: OSError: If the file can not be written. The message contains the path.
    """
    text = format_obj(positions, triangles)
    try:
        with open_utf8(path, 'w', newline='\n') as file:
            file.write(text)
    except OSError as e:
        raise OSError(f"Could not write OBJ file {path}: {e}") from e
    logger.debug("Wrote %s (%d vertices, %d triangles).", path, len(positions), len(triangles))
