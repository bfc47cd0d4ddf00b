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
from hiercloth.neural.model import DEFAULT_HIDDEN
from hiercloth.trainer.dataset import load_dataset
from hiercloth.trainer.training import TrainConfig, train, DEFAULT_EPOCHS, DEFAULT_BATCH_SIZE, \
    DEFAULT_LEARNING_RATE


def add_training_arguments(parser):
    parser.add_argument('--dataset', dest='dataset', metavar='PATH', required=True,
                        help='The dataset file to train on.')
    parser.add_argument('--epochs', dest='epochs', type=int, default=DEFAULT_EPOCHS,
                        help='Number of epochs.')
    parser.add_argument('--checkpoints', dest='checkpoints', type=int, nargs='*', default=None,
                        help='Epochs at which the loss is recorded (and the model saved).')
    parser.add_argument('--batch-size', dest='batch_size', type=int, default=DEFAULT_BATCH_SIZE)
    parser.add_argument('--lr', dest='learning_rate', type=float, default=DEFAULT_LEARNING_RATE,
                        help='Adam learning rate.')
    parser.add_argument('--seed', dest='seed', type=int, default=0,
                        help='Seed of the weight initialization and the shuffling.')
    parser.add_argument('--workers', dest='workers', type=int, default=1,
                        help='Threads per batch gradient.')


def add_arguments(parser):
    add_training_arguments(parser)
    parser.add_argument('--level', dest='level', type=int, default=None,
                        help='Expected target level of the dataset.')
    parser.add_argument('--hidden', dest='hidden', type=int, nargs='*', default=list(DEFAULT_HIDDEN),
                        help='Hidden layer widths.')
    parser.add_argument('--out', dest='out', metavar='DIR', required=True,
                        help='Directory for the checkpoints and the loss log.')
    add_common_arguments(parser)


def main(args):
    setup_logging(args.verbose)
    try:
        dataset = load_dataset(args.dataset)
        if args.level is not None and args.level != dataset.level:
            fail(f"{args.dataset} holds samples for level {dataset.level}, not {args.level}.")
        config = TrainConfig(args.epochs, args.batch_size, args.learning_rate, seed=args.seed,
                             hidden=args.hidden, checkpoint_epochs=args.checkpoints, workers=args.workers)
        _model, losses = train(dataset, config, args.out)
    except REPORTED_ERRORS as e:
        fail(str(e))
    print(json.dumps({"level": dataset.level, "losses": [[epoch, loss] for epoch, loss in losses]}))


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Train the model of one finer level.')
    add_arguments(parser)
    main(parser.parse_args())
