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
import sys
from typing import Sequence

from hiercloth.error import ConfigError, CheckpointError, HierarchyError, SimulationAbortedError, \
    DatasetGenerationError, TrainingDivergedError, InferenceError, SolverDivergenceError
from hiercloth.harness.config import SimConfig

# Errors reported by the commands as a message on stderr and exit code 1.
REPORTED_ERRORS = (ConfigError, CheckpointError, HierarchyError, SimulationAbortedError, DatasetGenerationError,
                   TrainingDivergedError, InferenceError, SolverDivergenceError, OSError, ValueError)


def fail(message: str):
    print(message, file=sys.stderr)
    exit(1)


def setup_logging(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s'
    )


def add_common_arguments(parser):
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='Log debug output.')


def check_config(path: str) -> SimConfig:
    """Loads a configuration file, or reports the problem and exits."""
    try:
        return SimConfig.from_json(path)
    except ConfigError as e:
        fail(f"Invalid configuration {path}: {e}")


def check_configs(paths: Sequence[str]):
    return [check_config(path) for path in paths]
