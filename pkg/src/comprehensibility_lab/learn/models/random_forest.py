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

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.ensemble import RandomForestClassifier

from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.learn.models.model import AbstractModel


def majority_vote(votes: np.ndarray, n_classes: int) -> np.ndarray:
    """
    Column-wise majority of class indices.

    Args:
        votes: (n_trees, n_samples) array of class indices.
        n_classes: number of classes.

    Returns:
        the winning class index per sample; ties go to the lowest index.
    """
    votes = np.asarray(votes, dtype=int)
    tallies = np.stack([(votes == c).sum(axis=0) for c in range(n_classes)])
    return tallies.argmax(axis=0)


class MajorityVoteForest(RandomForestClassifier):
    """Random forest whose prediction is the hard majority vote of its trees."""

    def predict(self, X):
        votes = np.stack([tree.predict(np.asarray(X, dtype=np.float32)) for tree in self.estimators_])
        return self.classes_.take(majority_vote(votes, len(self.classes_)))


class RandomForestModel(AbstractModel):
    family = ModelFamily.RF
    default_grid = {"n_estimators": [50, 100, 200], "max_depth": [None, 8, 16]}

    def build_estimator(self, n_train: int) -> BaseEstimator:
        max_depth = self.param("max_depth")
        return MajorityVoteForest(
            n_estimators=int(self.param("n_estimators")),
            max_depth=None if max_depth is None else int(max_depth),
            max_features="sqrt",
            random_state=self.seed,
        )
