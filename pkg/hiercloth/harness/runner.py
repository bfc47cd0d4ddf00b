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
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from hiercloth.error import SolverDivergenceError, InferenceError, SimulationAbortedError, ConfigError, \
    CheckpointError
from hiercloth.harness.config import SimConfig, METHOD_CG
from hiercloth.harness.export import export_frame
from hiercloth.harness.scenes import ClothScene
from hiercloth.neural.checkpoint import load_model
from hiercloth.neural.inference import infer_level
from hiercloth.neural.model import MlpModel
from hiercloth.solver.admm import AdmmSystem
from hiercloth.solver.collision import resolve_collisions
from hiercloth.solver.stepper import SolverMethod, step_coarse
from hiercloth.util import f, _

logger = logging.getLogger(__name__)


class SimulationResult:
    """
    The frames of one run. frames[k][j] holds the positions of level levels[j] after step k + 1;
    frame k is exported with index k + 1.
    """
    def __init__(self, levels: Sequence[int]):
        self.levels: List[int] = list(levels)
        self.frames: List[List[np.ndarray]] = []
        # Wall time per frame of the coarse solve and of all inference passes.
        self.step_ms: List[float] = []
        self.inference_ms: List[float] = []
        self.written: List[str] = []

    def positions(self, frame: int, level: int) -> np.ndarray:
        return self.frames[frame][self.levels.index(level)]

    @property
    def frame_ms(self) -> np.ndarray:
        inference = self.inference_ms if self.inference_ms else [0.0] * len(self.step_ms)
        return np.array(self.step_ms) + np.array(inference)

    def __len__(self):
        return len(self.frames)

    def __str__(self):
        return f"{self.__class__.__name__}<levels={self.levels}, frames={len(self.frames)}>"


def solver_method(config: SimConfig) -> SolverMethod:
    """The coarse solver of a configuration. Hybrid runs advance l_0 with ADMM."""
    return SolverMethod.CG if config.method == METHOD_CG else SolverMethod.ADMM


def _export(result: SimulationResult, scene: ClothScene, frame: int, levels: Sequence[int],
            positions: Sequence[np.ndarray], directory: str):
    os.makedirs(directory, exist_ok=True)
    for level, level_positions in zip(levels, positions):
        triangles = scene.hierarchy.levels[level].triangles
        result.written.append(export_frame(level_positions, triangles, frame, directory, level))


def run_conventional(config: SimConfig, level: int = 0, method: Optional[SolverMethod] = None,
                     scene: Optional[ClothScene] = None, export: Optional[bool] = None,
                     frames: Optional[int] = None, use_collisions=True) -> SimulationResult:
    """
    Runs the coarse solver directly on one hierarchy level, with a constraint set built at that
    resolution.

    :raises: SimulationAbortedError: If the solver diverges; carries the frame index.
    """
    if scene is None:
        scene = ClothScene(config)
    if not 0 <= level <= scene.hierarchy.finer_levels:
        raise ValueError(f(_("Level {level} does not exist in {scene.hierarchy}.")))
    method = solver_method(config) if method is None else method
    export = config.export if export is None else export
    frames = config.frames if frames is None else frames
    primitives = scene.primitives if use_collisions else []

    state = scene.level_state(level)
    constraints = scene.level_constraints(level)
    system = None
    if method == SolverMethod.ADMM:
        system = AdmmSystem(constraints, state.masses, state.pinned, scene.params.dt)
    logger.debug("Conventional %s run on level %d (%d vertices, %s).",
                 method.value, level, state.vertex_count, constraints)

    result = SimulationResult([level])
    for frame in range(1, frames + 1):
        start = time.perf_counter()
        try:
            step_coarse(state, constraints, primitives, scene.params, method, system)
        except SolverDivergenceError as e:
            raise SimulationAbortedError(frame, e) from e
        result.step_ms.append((time.perf_counter() - start) * 1000.0)
        result.frames.append([state.positions.copy()])
        if export:
            _export(result, scene, frame, [level], result.frames[-1], config.output_directory)
        logger.debug("Frame %d: %.3f ms.", frame, result.step_ms[-1])
    return result


def load_models(config: SimConfig) -> List[MlpModel]:
    """
    Loads the model of every finer level from config.model_paths.

    :raises: ConfigError: If a model does not exist, can not be read or targets the wrong level.
    """
    models = []
    for expected_level, path in enumerate(config.model_paths, start=1):
        try:
            model = load_model(path)
        except (OSError, CheckpointError) as e:
            raise ConfigError(f(_("Could not load the model for level {expected_level} from {path}: {e}"))) from e
        models.append(model)
    return models


def check_models(models: Sequence[MlpModel], finer_levels: int):
    if len(models) != finer_levels:
        raise ConfigError(f(_("Expected {finer_levels} model(s), got {len(models)}.")))
    for expected_level, model in enumerate(models, start=1):
        if model.level_index != expected_level:
            raise ConfigError(f(_("Model {model} was given for level {expected_level}.")))


def run_hybrid(config: SimConfig, models: Optional[Sequence[MlpModel]] = None,
               scene: Optional[ClothScene] = None, export: Optional[bool] = None,
               frames: Optional[int] = None, workers: Optional[int] = None,
               use_collisions=True) -> SimulationResult:
    """
    The hierarchical loop: every frame advances l_0 with the coarse solver, then infers
    l_1 .. l_N in order, each from the positions of the level below.

    :raises: SimulationAbortedError: If the solver diverges or inference fails; carries the frame index.
    """
    if scene is None:
        scene = ClothScene(config)
    if models is None:
        models = load_models(config)
    hierarchy = scene.hierarchy
    check_models(models, hierarchy.finer_levels)
    export = config.export if export is None else export
    frames = config.frames if frames is None else frames
    workers = config.workers if workers is None else workers
    primitives = scene.primitives if use_collisions else []
    method = SolverMethod.ADMM

    state = scene.level_state(0)
    constraints = scene.level_constraints(0)
    system = AdmmSystem(constraints, state.masses, state.pinned, scene.params.dt)
    levels = config.output_levels
    logger.debug("Hybrid run: %s, %d model(s), %d worker(s).", hierarchy, len(models), workers)

    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    result = SimulationResult(levels)
    try:
        for frame in range(1, frames + 1):
            start = time.perf_counter()
            try:
                step_coarse(state, constraints, primitives, scene.params, method, system)
            except SolverDivergenceError as e:
                raise SimulationAbortedError(frame, e) from e
            coarse_done = time.perf_counter()

            positions = state.positions
            all_levels = [positions.copy()]
            try:
                for model in models:
                    positions = infer_level(model, hierarchy, positions, workers, executor)
                    if config.fine_collisions and len(primitives) > 0:
                        positions, _unused = resolve_collisions(positions, None, primitives)
                    all_levels.append(positions)
            except InferenceError as e:
                raise SimulationAbortedError(frame, e) from e
            end = time.perf_counter()

            result.step_ms.append((coarse_done - start) * 1000.0)
            result.inference_ms.append((end - coarse_done) * 1000.0)
            result.frames.append([all_levels[level] for level in levels])
            if export:
                _export(result, scene, frame, levels, result.frames[-1], config.output_directory)
            logger.debug("Frame %d: coarse step %.3f ms, inference %.3f ms.",
                         frame, result.step_ms[-1], result.inference_ms[-1])
    finally:
        if executor is not None:
            executor.shutdown()
    return result
