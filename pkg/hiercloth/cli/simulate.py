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
import argparse
import json

import numpy as np

from hiercloth.cli import add_common_arguments, setup_logging, check_config, fail, REPORTED_ERRORS
from hiercloth.error import ConfigError
from hiercloth.harness.config import METHODS, METHOD_HYBRID
from hiercloth.harness.runner import run_conventional, run_hybrid


def add_arguments(parser):
    parser.add_argument('--config', dest='config', metavar='PATH', required=True,
                        help='The JSON file with the simulation configuration.')
    parser.add_argument('--method', dest='method', choices=METHODS, default=None,
                        help='Solver: conventional admm / cg on one level, or the hybrid method.')
    parser.add_argument('--frames', dest='frames', type=int, metavar='K', default=None,
                        help='Number of frames to simulate.')
    parser.add_argument('--out', dest='out', metavar='DIR', default=None,
                        help='Output directory for the OBJ frames.')
    parser.add_argument('--seed', dest='seed', type=int, metavar='S', default=None,
                        help='Scene seed.')
    parser.add_argument('--level', dest='level', type=int, default=0,
                        help='Hierarchy level simulated by the conventional methods.')
    parser.add_argument('--models', dest='models', nargs='*', metavar='PATH', default=None,
                        help='Model checkpoints for levels 1..N (hybrid method), overriding the configuration.')
    parser.add_argument('--workers', dest='workers', type=int, default=None,
                        help='Inference worker threads (hybrid method).')
    add_common_arguments(parser)


def main(args):
    setup_logging(args.verbose)
    config = check_config(args.config)
    try:
        config = config.with_overrides(args.method, args.frames, args.out, args.seed, args.models)
    except ConfigError as e:
        fail(f"Invalid configuration: {e}")

    try:
        if config.method == METHOD_HYBRID:
            result = run_hybrid(config, workers=args.workers)
        else:
            result = run_conventional(config, args.level)
    except REPORTED_ERRORS as e:
        fail(str(e))

    frame_ms = result.frame_ms
    print(json.dumps({
        "method": config.method,
        "levels": result.levels,
        "frames": len(result),
        "mean_ms": float(np.mean(frame_ms)),
        "files": len(result.written)
    }))


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Run a conventional or hybrid cloth simulation.')
    add_arguments(parser)
    main(parser.parse_args())
