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

from hiercloth.cli import mesh, simulate, sample, train, sweep, bench

COMMANDS = {
    'mesh': (mesh, 'Build the cloth hierarchy of a configuration and dump it.'),
    'simulate': (simulate, 'Run a conventional or hybrid cloth simulation.'),
    'sample': (sample, 'Generate a training dataset from full resolution simulations.'),
    'train': (train, 'Train the model of one finer level.'),
    'sweep': (sweep, 'Compare the loss curves of several network architectures.'),
    'bench': (bench, 'Time the conventional solvers against the hybrid method.'),
}


def main(argv=None):
    parser = argparse.ArgumentParser(prog='hiercloth', description='Hierarchical cloth simulation.')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    for name, (module, description) in COMMANDS.items():
        subparser = subparsers.add_parser(name, help=description, description=description)
        module.add_arguments(subparser)
        subparser.set_defaults(run=module.main)
    args = parser.parse_args(argv)
    args.run(args)


if __name__ == '__main__':
    main()
