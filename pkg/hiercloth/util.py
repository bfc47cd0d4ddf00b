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
from inspect import currentframe

import numpy as np

try:
    import builtins
    _ = builtins._
except Exception:
    _ = lambda a: a


def open_utf8(file, mode='r', *args, **kwargs):
    """Like open, but always uses the utf-8 encoding, on all platforms."""
    return open(file, mode, *args, encoding='utf-8', **kwargs)


def f(s):
    """f-strings as a function, for use with translatable strings: f'{level}' == f('{level}')"""
    frame = currentframe().f_back
    s1 = s.replace("'", "\\'").replace('\n', '\\n')
    try:
        return eval(f"f'{s1}'", frame.f_locals, frame.f_globals)
    except SyntaxError as e:
        if "f-string expression part cannot include a backslash" in str(e):
            s1 = s.replace('"', '\\"').replace('\n', '\\n')
            return eval(f'f"{s1}"', frame.f_locals, frame.f_globals)
        raise


def make_rng(seed: int, *streams: int) -> np.random.Generator:
    """
    Returns a numpy generator for the given seed. Additional integers select an independent
    sub-stream (for example one per scene), so parallel workers never share random state.
    """
    return np.random.default_rng(np.random.SeedSequence([seed, *streams]))


def split_evenly(count: int, parts: int):
    """Splits range(count) into at most `parts` contiguous (start, stop) chunks, in ascending order."""
    parts = max(1, min(parts, count)) if count > 0 else 1
    bounds = np.linspace(0, count, parts + 1).astype(np.int64)
    return [(int(bounds[i]), int(bounds[i + 1])) for i in range(parts)]
