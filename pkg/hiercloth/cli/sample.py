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

from hiercloth.cli import add_common_arguments, setup_logging, check_configs, fail, REPORTED_ERRORS
from hiercloth.trainer.dataset import generate_dataset, save_dataset


def add_arguments(parser):
    parser.add_argument('--config', dest='configs', nargs='+', metavar='PATH', required=True,
                        help='Scene configurations to simulate at full resolution.')
    parser.add_argument('--level', dest='level', type=int, required=True,
                        help='Target level of the samples (>= 1).')
    parser.add_argument('--frames-per-scene', dest='frames_per_scene', type=int, default=100,
                        help='Number of simulated frames sampled per scene.')
    parser.add_argument('--seed', dest='seed', type=int, default=0,
                        help='Seed selecting the sampled frames.')
    parser.add_argument('--workers', dest='workers', type=int, default=1,
                        help='Scenes simulated in parallel.')
    parser.add_argument('--out', dest='out', metavar='PATH', required=True,
                        help='The dataset file to write.')
    add_common_arguments(parser)


def main(args):
    setup_logging(args.verbose)
    configs = check_configs(args.configs)
    try:
        dataset = generate_dataset(configs, args.level, args.frames_per_scene, args.seed, args.workers)
        save_dataset(dataset, args.out)
    except REPORTED_ERRORS as e:
        fail(str(e))
    print(json.dumps({"level": dataset.level, "samples": len(dataset), "provenance": dataset.provenance}))


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Generate a training dataset from full resolution simulations.')
    add_arguments(parser)
    main(parser.parse_args())
