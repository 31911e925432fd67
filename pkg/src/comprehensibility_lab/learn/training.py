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
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.model_selection import ParameterGrid

from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.exceptions import ArityMismatch, EmptyTraining, SingleClassTraining
from comprehensibility_lab.learn.models.model_factory import create_model, model_class
from comprehensibility_lab.learn.preprocessing import Standardizer, dedup_training, select_features
from comprehensibility_lab.learn.smote import SmoteConfig, smote
from comprehensibility_lab.utils.constants import CATALOG_VERSION, DEFAULT_SEED, SMOTE_NEIGHBORS
from comprehensibility_lab.utils.utils import derive_seed

logger = logging.getLogger(__name__)

# stage tag of the SMOTE seed derived from a fit seed
_SMOTE_STAGE = 1


@dataclass(frozen=True)
class ModelSpec:
    """A family, its hyperparameter grid (defaults to the family grid) and a seed."""

    family: ModelFamily
    grid: Dict[str, List[Any]] = field(default_factory=dict)
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        grid = self.grid or model_class(self.family).default_grid
        if not grid or any(len(values) == 0 for values in grid.values()):
            raise ValueError(f"Hyperparameter grid of {self.family.value} must not be empty")
        model_class(self.family).validate_hyperparams(grid)
        object.__setattr__(self, "grid", {name: list(values) for name, values in grid.items()})

    def grid_points(self) -> List[Dict[str, Any]]:
        """Grid points in a deterministic order (parameter names sorted)."""
        return list(ParameterGrid(self.grid))


@dataclass(frozen=True, eq=False)
class TrainedModel:
    """
    A fitted model with everything needed to predict from raw feature rows.

    `predict` takes rows restricted to the selected subset; `project` restricts
    full-width rows to that subset.
    """

    family: ModelFamily
    hyperparams: Dict[str, Any]
    estimator: BaseEstimator
    standardizer: Standardizer
    feature_subset: Tuple[int, ...]
    feature_names: Tuple[str, ...]
    input_features: int
    labels: Tuple[int, ...]
    seed: int
    fraction: float = 1.0
    catalog_version: str = CATALOG_VERSION
    metadata: Dict[str, Any] = field(default_factory=dict)

    def project(self, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        if rows.shape[1] != self.input_features:
            raise ArityMismatch(
                f"Model expects {self.input_features} input features, got {rows.shape[1]}"
            )
        return rows[:, list(self.feature_subset)]

    def _prepared(self, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        if rows.shape[1] != len(self.feature_subset):
            raise ArityMismatch(
                f"Model expects rows of {len(self.feature_subset)} selected features, got {rows.shape[1]}"
            )
        return self.standardizer.transform(rows)

    def predict(self, rows: np.ndarray) -> np.ndarray:
        return np.asarray(self.estimator.predict(self._prepared(rows))).astype(int)

    def scores(self, rows: np.ndarray) -> Optional[np.ndarray]:
        """Per-class scores, columns in `labels` order, when the family exposes them."""
        if not hasattr(self.estimator, "predict_proba"):
            return None
        return np.asarray(self.estimator.predict_proba(self._prepared(rows)))


def fit(
    spec: ModelSpec,
    hyperparams: Dict[str, Any],
    X: np.ndarray,
    y: np.ndarray,
    fraction: float = 1.0,
    feature_names: Optional[Sequence[str]] = None,
    always_keep: Sequence[int] = (),
    seed: Optional[int] = None,
    smote_k: int = SMOTE_NEIGHBORS,
) -> TrainedModel:
    """
    Train one grid point: dedup, Kendall tau selection, standardization, SMOTE, then the estimator.

    Args:
        spec: family and grid of the model.
        hyperparams: one point of `spec.grid`.
        X: training rows (full width).
        y: training labels.
        fraction: share of ranked features to keep.
        feature_names: names of the columns of X.
        always_keep: columns exempt from selection.
        seed: overrides `spec.seed`; derived per grid point and fold by callers.
        smote_k: SMOTE neighbour count.

    Raises:
        EmptyTraining: if X has no rows.
        SingleClassTraining: if fewer than two labels remain after dedup.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y).astype(int)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyTraining("No training rows")
    seed = spec.seed if seed is None else seed
    names = tuple(feature_names) if feature_names is not None else tuple(f"f{i}" for i in range(X.shape[1]))
    if len(names) != X.shape[1]:
        raise ArityMismatch(f"{len(names)} feature names for {X.shape[1]} columns")

    X_unique, y_unique = dedup_training(X, y)
    labels = tuple(int(label) for label in np.unique(y_unique))
    if len(labels) < 2:
        raise SingleClassTraining(f"Training rows carry a single label {labels}")

    subset = select_features(X_unique, y_unique, fraction, always_keep)
    selected = X_unique[:, list(subset)]
    standardizer = Standardizer.fit(selected)
    balanced = smote(
        standardizer.transform(selected),
        y_unique,
        SmoteConfig(k=smote_k, seed=derive_seed(seed, _SMOTE_STAGE)),
    )

    model = create_model(spec.family, hyperparams, seed)
    estimator = model.build_estimator(n_train=len(balanced.y))
    estimator.fit(balanced.X, balanced.y)

    return TrainedModel(
        family=spec.family,
        hyperparams=dict(hyperparams),
        estimator=estimator,
        standardizer=standardizer,
        feature_subset=subset,
        feature_names=tuple(names[i] for i in subset),
        input_features=X.shape[1],
        labels=labels,
        seed=seed,
        fraction=fraction,
    )


def predict(model: TrainedModel, row: Sequence[float]) -> int:
    """
    Label of one row restricted to the model's selected features.

    Raises:
        ArityMismatch: if the row length differs from the selected subset.
    """
    return int(model.predict(np.asarray(row, dtype=float).reshape(1, -1))[0])
