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

import copy
import logging
from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.metrics import f1_score
from sklearn.model_selection import StratifiedShuffleSplit
from sklearn.neural_network import MLPClassifier

from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.learn.models.model import AbstractModel

logger = logging.getLogger(__name__)


class EarlyStoppingMLP(ClassifierMixin, BaseEstimator):
    """
    Feed-forward network with a softmax output, trained one epoch at a time and
    stopped once the weighted F1 on a stratified validation split has not improved
    for `patience` epochs. The best network seen is kept.
    """

    def __init__(
        self,
        hidden_layer_sizes: Sequence[int] = (32,),
        learning_rate_init: float = 0.001,
        max_epochs: int = 200,
        patience: int = 20,
        validation_fraction: float = 0.1,
        random_state: Optional[int] = None,
    ):
        self.hidden_layer_sizes = hidden_layer_sizes
        self.learning_rate_init = learning_rate_init
        self.max_epochs = max_epochs
        self.patience = patience
        self.validation_fraction = validation_fraction
        self.random_state = random_state

    def _split(self, X: np.ndarray, y: np.ndarray):
        _, counts = np.unique(y, return_counts=True)
        n_validation = int(np.ceil(self.validation_fraction * len(y)))
        if counts.min() < 2 or n_validation < len(counts) or len(y) - n_validation < len(counts):
            return X, y, None, None
        splitter = StratifiedShuffleSplit(
            n_splits=1, test_size=self.validation_fraction, random_state=self.random_state
        )
        train, validation = next(splitter.split(X, y))
        return X[train], y[train], X[validation], y[validation]

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y)
        self.classes_ = np.unique(y)
        X_train, y_train, X_val, y_val = self._split(X, y)

        network = MLPClassifier(
            hidden_layer_sizes=tuple(int(size) for size in self.hidden_layer_sizes),
            learning_rate_init=self.learning_rate_init,
            random_state=self.random_state,
        )
        best, best_score, stale = None, -np.inf, 0
        for epoch in range(self.max_epochs):
            network.partial_fit(X_train, y_train, classes=self.classes_)
            if X_val is None:
                continue
            score = f1_score(y_val, network.predict(X_val), average="weighted", zero_division=0)
            if score > best_score:
                best, best_score, stale = copy.deepcopy(network), score, 0
            else:
                stale += 1
                if stale >= self.patience:
                    logger.debug(f"Early stop after {epoch + 1} epochs, validation wF1 {best_score:.4f}")
                    break

        self.network_ = best if best is not None else network
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        return self.network_.predict(np.asarray(X, dtype=float))

    def predict_proba(self, X):
        return self.network_.predict_proba(np.asarray(X, dtype=float))


class MultilayerPerceptronModel(AbstractModel):
    family = ModelFamily.MLP
    default_grid = {"hidden_layer_sizes": [[16], [32], [32, 16]], "learning_rate": [0.001, 0.01]}

    def build_estimator(self, n_train: int) -> BaseEstimator:
        return EarlyStoppingMLP(
            hidden_layer_sizes=tuple(int(size) for size in self.param("hidden_layer_sizes")),
            learning_rate_init=float(self.param("learning_rate")),
            random_state=self.seed,
        )
