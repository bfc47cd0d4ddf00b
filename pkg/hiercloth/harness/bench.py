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
import csv
import logging
from typing import List, Sequence, Optional, Dict

import numpy as np

from hiercloth.harness.config import SimConfig
from hiercloth.harness.runner import run_conventional, run_hybrid, load_models
from hiercloth.harness.scenes import ClothScene
from hiercloth.neural.model import MlpModel, DEFAULT_HIDDEN
from hiercloth.solver.stepper import SolverMethod
from hiercloth.util import open_utf8

logger = logging.getLogger(__name__)

BENCH_CSV_HEADER = ['method', 'masses', 'mean_ms', 'std_ms']
DEFAULT_BENCH_FRAMES = 100
DEFAULT_WARMUP_FRAMES = 10

METHOD_CG = 'cg'
METHOD_ADMM = 'admm'
METHOD_HYBRID = 'hybrid'
NO_COLLISIONS_SUFFIX = '-nocollide'


class BenchRow:
    """Per-frame wall time statistics of one method on one configuration."""
    def __init__(self, method: str, masses: int, mean_ms: float, std_ms: float, scene: str = '', workers: int = 1):
        self.method = method
        self.masses = masses
        self.mean_ms = mean_ms
        self.std_ms = std_ms
        self.scene = scene
        self.workers = workers

    def as_csv_row(self) -> list:
        return [self.method, self.masses, f"{self.mean_ms:.4f}", f"{self.std_ms:.4f}"]

    def __str__(self):
        return f"{self.scene} {self.method}: {self.masses} masses, {self.mean_ms:.3f} +- {self.std_ms:.3f} ms"


def _stats(times: Sequence[float], warmup: int):
    measured = np.array(times[warmup:])
    return float(np.mean(measured)), float(np.std(measured))


def bench_models(config: SimConfig, scene: ClothScene) -> List[MlpModel]:
    """
    The models timed in the hybrid run: the configured checkpoints, or freshly initialized
    networks of the default architecture if the configuration names none. The inference
    cost only depends on the architecture.
    """
    if len(config.model_paths) == scene.hierarchy.finer_levels:
        return load_models(config)
    logger.warning("No models configured for %s; timing hybrid inference with untrained networks.", config.scene)
    return [MlpModel.create(level, DEFAULT_HIDDEN, seed=config.seed)
            for level in range(1, scene.hierarchy.finer_levels + 1)]


def bench(configs: Sequence[SimConfig], frames: int = DEFAULT_BENCH_FRAMES, warmup: int = DEFAULT_WARMUP_FRAMES,
          workers: int = 1, without_collisions=True) -> List[BenchRow]:
    """
    Times CG and ADMM on the finest level and the hybrid method on every configuration.
    Each method runs warmup + frames steps; only the last `frames` are measured, export excluded.
    Configurations with collision primitives are timed a second time without them if
    without_collisions is set.
    """
    if frames < 1 or warmup < 0:
        raise ValueError("Need at least one measured frame and a non-negative warm-up count.")
    rows = []
    total = warmup + frames
    for config in configs:
        scene = ClothScene(config)
        finest = scene.hierarchy.finer_levels
        masses = scene.hierarchy.finest.vertex_count
        models = bench_models(config, scene)
        variants = [True]
        if without_collisions and len(scene.primitives) > 0:
            variants.append(False)
        for use_collisions in variants:
            suffix = '' if use_collisions else NO_COLLISIONS_SUFFIX
            timings: Dict[str, List[float]] = {}
            for method_name, method in ((METHOD_CG, SolverMethod.CG), (METHOD_ADMM, SolverMethod.ADMM)):
                result = run_conventional(config, finest, method, scene, export=False, frames=total,
                                          use_collisions=use_collisions)
                timings[method_name] = list(result.frame_ms)
            result = run_hybrid(config, models, scene, export=False, frames=total, workers=workers,
                                use_collisions=use_collisions)
            timings[METHOD_HYBRID] = list(result.frame_ms)
            for method_name, times in timings.items():
                mean, std = _stats(times, warmup)
                row = BenchRow(method_name + suffix, masses, mean, std, config.scene, workers)
                logger.info("Bench: %s", row)
                rows.append(row)
    return rows


def write_bench_csv(path: str, rows: Sequence[BenchRow]):
    with open_utf8(path, 'w', newline='') as file:
        writer = csv.writer(file, lineterminator='\n')
        writer.writerow(BENCH_CSV_HEADER)
        for row in rows:
            writer.writerow(row.as_csv_row())
