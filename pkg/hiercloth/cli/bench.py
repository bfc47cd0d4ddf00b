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
import csv
import sys

from hiercloth.cli import add_common_arguments, setup_logging, check_configs, fail, REPORTED_ERRORS
from hiercloth.harness.bench import bench, write_bench_csv, BENCH_CSV_HEADER, DEFAULT_BENCH_FRAMES, \
    DEFAULT_WARMUP_FRAMES


def add_arguments(parser):
    parser.add_argument('--config', dest='configs', nargs='+', metavar='PATH', required=True,
                        help='Scene configurations to time.')
    parser.add_argument('--frames', dest='frames', type=int, default=DEFAULT_BENCH_FRAMES,
                        help='Measured frames per method.')
    parser.add_argument('--warmup', dest='warmup', type=int, default=DEFAULT_WARMUP_FRAMES,
                        help='Unmeasured frames before the measurement.')
    parser.add_argument('--workers', dest='workers', type=int, default=1,
                        help='Inference worker threads of the hybrid method.')
    parser.add_argument('--with-collisions-only', dest='with_collisions_only', action='store_true',
                        help='Do not repeat scenes with collision objects without them.')
    parser.add_argument('--out', dest='out', metavar='PATH', default=None,
                        help='The CSV file to write. Printed to stdout if not specified.')
    add_common_arguments(parser)


def main(args):
    setup_logging(args.verbose)
    configs = check_configs(args.configs)
    try:
        rows = bench(configs, args.frames, args.warmup, args.workers, not args.with_collisions_only)
        if args.out is not None:
            write_bench_csv(args.out, rows)
    except REPORTED_ERRORS as e:
        fail(str(e))
    if args.out is None:
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(BENCH_CSV_HEADER)
        for row in rows:
            writer.writerow(row.as_csv_row())


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Time the conventional solvers against the hybrid method.')
    add_arguments(parser)
    main(parser.parse_args())
