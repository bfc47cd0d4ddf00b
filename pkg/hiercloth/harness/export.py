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
import os

import numpy as np

from hiercloth.mesh.obj import write_obj

FRAME_FILE_PATTERN = 'frame_%05d_l%d.obj'


def frame_file_name(frame: int, level: int) -> str:
    return FRAME_FILE_PATTERN % (frame, level)


def export_frame(positions: np.ndarray, triangles: np.ndarray, frame: int, directory: str, level: int = 0) -> str:
    """
    Writes one level of one frame as `frame_%05d_l%d.obj` into directory and returns the path.
    Identical input gives a byte-identical file.

    :raises: OSError: If the file can not be written; the message contains the path.
    """
    path = os.path.join(directory, frame_file_name(frame, level))
    write_obj(path, positions, triangles)
    return path
