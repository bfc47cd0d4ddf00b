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
import os

from hiercloth.cli import add_common_arguments, setup_logging, check_config, fail, REPORTED_ERRORS
from hiercloth.harness.export import export_frame
from hiercloth.harness.scenes import ClothScene


def add_arguments(parser):
    parser.add_argument('--config', dest='config', metavar='PATH', required=True,
                        help='The JSON file with the simulation configuration.')
    parser.add_argument('--out', dest='out', metavar='DIR', default=None,
                        help='If specified, write the rest shape of every level as OBJ (frame 0) into DIR.')
    add_common_arguments(parser)


def main(args):
    setup_logging(args.verbose)
    config = check_config(args.config)
    try:
        scene = ClothScene(config)
        levels = []
        for index, mesh in enumerate(scene.hierarchy.levels):
            levels.append({
                "level": index,
                "vertices": mesh.vertex_count,
                "edges": mesh.edge_count,
                "triangles": mesh.triangle_count,
                "pinned": mesh.pinned_indices.tolist()
            })
            if args.out is not None:
                os.makedirs(args.out, exist_ok=True)
                export_frame(mesh.vertices, mesh.triangles, 0, args.out, index)
    except REPORTED_ERRORS as e:
        fail(str(e))
    print(json.dumps({"scene": config.scene, "levels": levels}))


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Build the cloth hierarchy of a configuration and dump it.')
    add_arguments(parser)
    main(parser.parse_args())
