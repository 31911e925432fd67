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
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy import stats

from comprehensibility_lab.exceptions import EmptyTraining
from comprehensibility_lab.utils.constants import FEATURE_FRACTIONS

logger = logging.getLogger(__name__)


def dedup_training(X: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Drop repeated (feature vector, label) rows, keeping first occurrences.
    Rows sharing features but not labels are conflicting evidence and are all kept.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    seen = set()
    keep = []
    for i in range(len(y)):
        key = (np.ascontiguousarray(X[i]).tobytes(), int(y[i]))
        if key not in seen:
            seen.add(key)
            keep.append(i)
    if len(keep) < len(y):
        logger.debug(f"Removed {len(y) - len(keep)} duplicate training row(s)")
    return X[keep], y[keep]


@dataclass(frozen=True, eq=False)
class Standardizer:
    """z = (x - mean) / std with population std; constant columns use std = 1."""

    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def fit(cls, X: np.ndarray) -> "Standardizer":
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[0] == 0:
            raise EmptyTraining("Cannot fit a standardizer without training rows")
        mean = X.mean(axis=0)
        std = X.std(axis=0)
        std = np.where(std == 0, 1.0, std)
        return cls(mean=mean, std=std)

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.mean) / self.std


def fit_standardizer(X: np.ndarray) -> Standardizer:
    return Standardizer.fit(X)


def apply(standardizer: Standardizer, X: np.ndarray) -> np.ndarray:
    return standardizer.transform(X)


def kendall_tau(x: Sequence[float], y: Sequence[float]) -> float:
    """
    Tie-corrected Kendall tau-b. A column with all values tied carries no
    ranking information and scores 0.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) != len(y):
        raise ValueError(f"Lengths differ: {len(x)} != {len(y)}")
    if len(x) < 2:
        raise ValueError("Kendall's tau needs at least two rows")
    if np.all(x == x[0]) or np.all(y == y[0]):
        return 0.0
    tau = stats.kendalltau(x, y, variant="b").statistic
    return 0.0 if math.isnan(tau) else float(tau)


@dataclass(frozen=True, eq=False)
class FeatureRanking:
    """Kendall tau-b of each candidate column; `order` sorts candidates by |tau| desc, then column."""

    columns: Tuple[int, ...]
    taus: Tuple[float, ...]

    @property
    def order(self) -> Tuple[int, ...]:
        magnitudes = -np.abs(np.asarray(self.taus))
        return tuple(self.columns[i] for i in np.argsort(magnitudes, kind="stable"))


def rank_features(X: np.ndarray, y: np.ndarray, columns: Sequence[int]) -> FeatureRanking:
    X = np.asarray(X, dtype=float)
    return FeatureRanking(
        columns=tuple(columns),
        taus=tuple(kendall_tau(X[:, column], y) for column in columns),
    )


def check_fraction(fraction: float) -> float:
    if not any(math.isclose(fraction, allowed) for allowed in FEATURE_FRACTIONS):
        raise ValueError(
            f"Feature fraction {fraction} is not one of {', '.join(f'{f:g}' for f in FEATURE_FRACTIONS)}"
        )
    return fraction


def selection_size(fraction: float, candidates: int) -> int:
    # rounding first keeps 0.3 * 10 at 3 instead of 3.0000000000000004 -> 4
    return min(candidates, math.ceil(round(fraction * candidates, 9)))


def select_features(
    X: np.ndarray,
    y: np.ndarray,
    fraction: float,
    always_keep: Sequence[int] = (),
) -> Tuple[int, ...]:
    """
    Keep the ceil(fraction * d) columns most correlated with the labels.

    Args:
        X: training rows.
        y: training labels.
        fraction: one of 0.1, 0.2, ..., 1.0.
        always_keep: columns exempt from ranking (developer features), always selected.

    Returns:
        selected column indices in ascending (catalog) order.
    """
    check_fraction(fraction)
    X = np.asarray(X, dtype=float)
    kept = set(always_keep)
    candidates = [column for column in range(X.shape[1]) if column not in kept]
    size = selection_size(fraction, len(candidates))
    if size == len(candidates):
        return tuple(range(X.shape[1]))
    ranking = rank_features(X, y, candidates)
    return tuple(sorted(set(ranking.order[:size]) | kept))
