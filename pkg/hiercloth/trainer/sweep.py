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
from typing import Sequence, List, Optional, Dict, Tuple

from hiercloth.error import TrainingDivergedError
from hiercloth.trainer.dataset import Dataset
from hiercloth.trainer.training import TrainConfig, train, LossLog
from hiercloth.util import open_utf8

logger = logging.getLogger(__name__)

SWEEP_DEPTHS = (2, 3, 4, 5)
SWEEP_WIDTHS = (16, 32, 64, 128)
# Observed optimum: three fully connected layers of width 32.
REFERENCE_DEPTH = 3
REFERENCE_WIDTH = 32
SWEEP_CSV_HEADER = ['depth', 'width', 'epoch', 'loss']
KIND_DEPTH = 'depth'
KIND_WIDTH = 'width'


def hidden_layers(depth: int, width: int) -> Tuple[int, ...]:
    """Hidden widths of a network with `depth` fully connected layers of width `width`."""
    if depth < 1:
        raise ValueError(f"A network needs at least one layer (got depth {depth}).")
    return (width,) * (depth - 1)


class SweepCurve:
    def __init__(self, kind: str, depth: int, width: int, losses: LossLog, error: Optional[str] = None):
        self.kind = kind
        self.depth = depth
        self.width = width
        self.losses = losses
        self.error = error

    @property
    def failed(self) -> bool:
        return self.error is not None

    @property
    def final_loss(self) -> float:
        return self.losses[-1][1] if self.losses and not self.failed else float('inf')

    @property
    def epochs(self) -> List[int]:
        return [epoch for epoch, _loss in self.losses]

    def __str__(self):
        state = f"failed: {self.error}" if self.failed else f"final loss {self.final_loss:.6e}"
        return f"{self.kind} sweep, depth {self.depth}, width {self.width}: {state}"


class SweepReport:
    """The curves of a depth sweep and a width sweep, and where the best final losses landed."""
    def __init__(self, depth_curves: List[SweepCurve], width_curves: List[SweepCurve]):
        self.depth_curves = depth_curves
        self.width_curves = width_curves

    @staticmethod
    def _best(curves: List[SweepCurve]) -> Optional[SweepCurve]:
        candidates = [c for c in curves if not c.failed and c.losses]
        if not candidates:
            return None
        return min(candidates, key=lambda c: c.final_loss)

    @property
    def best_depth(self) -> Optional[int]:
        best = self._best(self.depth_curves)
        return best.depth if best is not None else None

    @property
    def best_width(self) -> Optional[int]:
        best = self._best(self.width_curves)
        return best.width if best is not None else None

    @property
    def depth_matches_reference(self) -> bool:
        return self.best_depth == REFERENCE_DEPTH

    @property
    def width_matches_reference(self) -> bool:
        return self.best_width == REFERENCE_WIDTH

    @property
    def curves(self) -> List[SweepCurve]:
        return self.depth_curves + self.width_curves

    def unique_curves(self) -> List[SweepCurve]:
        """Every trained configuration once, depth sweep first."""
        seen = set()
        result = []
        for curve in self.curves:
            if (curve.depth, curve.width) not in seen:
                seen.add((curve.depth, curve.width))
                result.append(curve)
        return result


def sweep_architectures(dataset: Dataset, config: TrainConfig, depths: Sequence[int] = SWEEP_DEPTHS,
                        widths: Sequence[int] = SWEEP_WIDTHS, depth_sweep_width: int = REFERENCE_WIDTH,
                        width_sweep_depth: int = REFERENCE_DEPTH) -> SweepReport:
    """
    Trains every depth at width depth_sweep_width and every width at depth width_sweep_depth, all with
    the seed, budget and checkpoint epochs of config. A configuration that fails is recorded
    and the sweep goes on.
    """
    if len(dataset) == 0:
        raise ValueError("Can not sweep on an empty dataset.")
    trained: Dict[Tuple[int, int], Tuple[LossLog, Optional[str]]] = {}

    def run(kind: str, depth: int, width: int) -> SweepCurve:
        key = (depth, width)
        if key not in trained:
            try:
                _model, losses = train(dataset, config.with_architecture(hidden_layers(depth, width)))
                trained[key] = (losses, None)
            except (TrainingDivergedError, ValueError, ArithmeticError) as e:
                logger.warning("Sweep configuration depth %d, width %d failed: %s", depth, width, e)
                trained[key] = ([], str(e))
        losses, error = trained[key]
        curve = SweepCurve(kind, depth, width, losses, error)
        logger.info("%s", curve)
        return curve

    depth_curves = [run(KIND_DEPTH, depth, depth_sweep_width) for depth in depths]
    width_curves = [run(KIND_WIDTH, width_sweep_depth, width) for width in widths]
    report = SweepReport(depth_curves, width_curves)
    if REFERENCE_DEPTH in depths and not report.depth_matches_reference:
        logger.warning("Lowest final loss of the depth sweep at depth %s, not at depth %d.",
                       report.best_depth, REFERENCE_DEPTH)
    if REFERENCE_WIDTH in widths and not report.width_matches_reference:
        logger.warning("Lowest final loss of the width sweep at width %s, not at width %d.",
                       report.best_width, REFERENCE_WIDTH)
    return report


def write_sweep_csv(path: str, curves: Sequence[SweepCurve]):
    """One row per (configuration, checkpoint epoch). Failed configurations have no rows."""
    with open_utf8(path, 'w', newline='') as file:
        writer = csv.writer(file, lineterminator='\n')
        writer.writerow(SWEEP_CSV_HEADER)
        for curve in curves:
            for epoch, loss in curve.losses:
                writer.writerow([curve.depth, curve.width, epoch, repr(loss)])
