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

from hiercloth.cli import add_common_arguments, setup_logging, fail, REPORTED_ERRORS
from hiercloth.cli.train import add_training_arguments
from hiercloth.trainer.dataset import load_dataset
from hiercloth.trainer.sweep import sweep_architectures, write_sweep_csv, SWEEP_DEPTHS, SWEEP_WIDTHS
from hiercloth.trainer.training import TrainConfig


def add_arguments(parser):
    add_training_arguments(parser)
    parser.add_argument('--depths', dest='depths', type=int, nargs='+', default=list(SWEEP_DEPTHS),
                        help='Numbers of fully connected layers of the depth sweep.')
    parser.add_argument('--widths', dest='widths', type=int, nargs='+', default=list(SWEEP_WIDTHS),
                        help='Layer widths of the width sweep.')
    parser.add_argument('--out', dest='out', metavar='PATH', required=True,
                        help='The CSV file for the loss curves.')
    add_common_arguments(parser)


def main(args):
    setup_logging(args.verbose)
    try:
        dataset = load_dataset(args.dataset)
        config = TrainConfig(args.epochs, args.batch_size, args.learning_rate, seed=args.seed,
                             checkpoint_epochs=args.checkpoints, workers=args.workers)
        report = sweep_architectures(dataset, config, args.depths, args.widths)
        write_sweep_csv(args.out, report.unique_curves())
    except REPORTED_ERRORS as e:
        fail(str(e))
    print(json.dumps({
        "best_depth": report.best_depth,
        "best_width": report.best_width,
        "depth_matches_reference": report.depth_matches_reference,
        "width_matches_reference": report.width_matches_reference,
        "failed": [[c.depth, c.width, c.error] for c in report.unique_curves() if c.failed]
    }))


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Compare the loss curves of several network architectures.')
    add_arguments(parser)
    main(parser.parse_args())
