#     Copyright (c) comprehensibility-lab 2024. All Rights Reserved.
#
#     Licensed under the Apache License, Version 2.0 (the "License");
#     you may not use this file except in compliance with the License.
#     You may obtain a copy of the License at:
#         https://www.apache.org/licenses/LICENSE-2.0
#     Unless required by applicable law or agreed to in writing, software
#     distributed under the License is distributed on an "AS IS" BASIS,
#     WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
#     or implied. See the License for the specific language governing
#     permissions and limitations under the License.

import logging
import warnings
from dataclasses import dataclass, field
from typing import List

import numpy as np
from sklearn.neighbors import NearestNeighbors

from comprehensibility_lab.exceptions import TooFewSamples
from comprehensibility_lab.utils.constants import SMOTE_NEIGHBORS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmoteConfig:
    k: int = SMOTE_NEIGHBORS
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"SMOTE needs k >= 1, got {self.k}")


@dataclass(frozen=True, eq=False)
class SmoteResult:
    X: np.ndarray
    y: np.ndarray
    warnings: List[str] = field(default_factory=list)


def interpolate(sample: np.ndarray, neighbor: np.ndarray, u) -> np.ndarray:
    """Point at fraction u of the segment from sample to neighbor; u broadcasts over rows."""
    return sample + u * (neighbor - sample)


def _neighbor_table(samples: np.ndarray, k: int) -> np.ndarray:
    """k nearest same-class neighbours of every sample, the sample itself excluded."""
    index = NearestNeighbors(n_neighbors=k + 1).fit(samples)
    candidates = index.kneighbors(samples, return_distance=False)
    table = np.empty((len(samples), k), dtype=int)
    for i, row in enumerate(candidates):
        others = [j for j in row if j != i]
        table[i] = others[:k]
    return table


def smote(X: np.ndarray, y: np.ndarray, config: SmoteConfig) -> SmoteResult:
    """
    Oversample every minority class up to the majority count.

    Synthetic rows are appended after the original rows, minority classes in
    ascending label order. A class with a single sample is duplicated instead
    and a TooFewSamples warning is emitted.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    labels, counts = np.unique(y, return_counts=True)
    if len(labels) == 0:
        return SmoteResult(X=X, y=y)
    majority = counts.max()
    rng = np.random.default_rng(config.seed)

    new_rows = [X]
    new_labels = [y]
    notes: List[str] = []
    for label, count in zip(labels, counts):
        needed = int(majority - count)
        if needed == 0:
            continue
        samples = X[y == label]
        if count == 1:
            message = f"Class {label} has a single training sample; duplicating it {needed} time(s)"
            warnings.warn(message, TooFewSamples, stacklevel=2)
            logger.warning(message)
            notes.append(message)
            synthetic = np.repeat(samples, needed, axis=0)
        else:
            k = min(config.k, int(count) - 1)
            neighbors = _neighbor_table(samples, k)
            base = rng.integers(0, count, size=needed)
            chosen = neighbors[base, rng.integers(0, k, size=needed)]
            u = rng.random(needed)
            synthetic = interpolate(samples[base], samples[chosen], u[:, None])
        new_rows.append(synthetic)
        new_labels.append(np.full(needed, label, dtype=y.dtype))

    return SmoteResult(X=np.vstack(new_rows), y=np.concatenate(new_labels), warnings=notes)
