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

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from sklearn.model_selection import StratifiedKFold

from comprehensibility_lab.exceptions import TooFewPerClass
from comprehensibility_lab.utils.constants import INNER_FOLDS, OUTER_FOLDS
from comprehensibility_lab.utils.utils import derive_seed

# stage tag of the inner-fold seeds
_INNER_SPLIT_STAGE = 10


@dataclass(frozen=True, eq=False)
class Fold:
    train: np.ndarray
    test: np.ndarray


@dataclass(frozen=True, eq=False)
class FoldPlan:
    """Outer folds over the dataset and, per outer training set, inner folds (absolute indices)."""

    outer: List[Fold]
    inner: List[List[Fold]]
    seed: int


def stratified_folds(labels: Sequence[int], k: int, seed: int) -> List[Fold]:
    """
    Split indices into k stratified folds; per-fold class counts stay within
    one instance of the proportional share.

    Raises:
        TooFewPerClass: if a class has fewer than k instances.
    """
    labels = np.asarray(labels)
    values, counts = np.unique(labels, return_counts=True)
    for label, count in zip(values, counts):
        if count < k:
            raise TooFewPerClass(int(label), int(count), k)
    splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed % (2**32))
    return [
        Fold(train=np.sort(train), test=np.sort(test))
        for train, test in splitter.split(np.zeros((len(labels), 1)), labels)
    ]


def fold_plan(
    labels: Sequence[int],
    seed: int,
    outer_folds: int = OUTER_FOLDS,
    inner_folds: int = INNER_FOLDS,
) -> FoldPlan:
    labels = np.asarray(labels)
    outer = stratified_folds(labels, outer_folds, seed)
    inner = []
    for split, fold in enumerate(outer):
        relative = stratified_folds(labels[fold.train], inner_folds, derive_seed(seed, _INNER_SPLIT_STAGE, split))
        inner.append([Fold(train=fold.train[f.train], test=fold.train[f.test]) for f in relative])
    return FoldPlan(outer=outer, inner=inner, seed=seed)
