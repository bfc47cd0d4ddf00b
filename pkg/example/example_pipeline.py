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
import os

from hiercloth.harness.config import SimConfig
from hiercloth.harness.runner import run_hybrid
from hiercloth.trainer.dataset import generate_dataset
from hiercloth.trainer.training import TrainConfig, train

if __name__ == '__main__':
    base = os.path.dirname(os.path.realpath(__file__))
    scenes = [SimConfig.from_json(os.path.join(base, name)) for name in ('hang.json', 'flag.json', 'sphere.json')]
    models = []
    for level in (1, 2):
        dataset = generate_dataset(scenes, level, frames_per_scene=30, seed=0, workers=3)
        print(f"{dataset}: {', '.join(dataset.provenance)}")
        model, losses = train(dataset, TrainConfig(epochs=200, checkpoint_epochs=[50, 100, 200]))
        for epoch, loss in losses:
            print(f"  l{level} epoch {epoch:5}: {loss:.6e}")
        models.append(model)

    config = scenes[0].with_overrides(output_directory=os.path.join(base, 'frames'))
    result = run_hybrid(config, models)
    print(f"{result}, {result.frame_ms.mean():.3f} ms per frame, {len(result.written)} files written")
