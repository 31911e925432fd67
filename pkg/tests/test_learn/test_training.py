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
import pytest

from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.exceptions import ArityMismatch, EmptyTraining, SingleClassTraining
from comprehensibility_lab.learn import training as training_module
from comprehensibility_lab.learn.training import ModelSpec, fit, predict


def _data(n=150, width=10, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, width))
    y = (X[:, 4] + 0.5 * X[:, 1] > 0).astype(int)
    return X, y


class TestModelSpec:
    # The default grid of the family is used when none is given
    def test_default_grid(self):
        spec = ModelSpec(ModelFamily.RF)
        assert spec.grid == {"n_estimators": [50, 100, 200], "max_depth": [None, 8, 16]}
        assert len(spec.grid_points()) == 9

    # Grid points come in a stable order
    def test_grid_points_order(self):
        spec = ModelSpec(ModelFamily.KNN, grid={"n_neighbors": [3, 1], "metric": ["euclidean"]})
        assert spec.grid_points() == [
            {"metric": "euclidean", "n_neighbors": 3},
            {"metric": "euclidean", "n_neighbors": 1},
        ]

    # Empty grids and foreign parameters are rejected
    def test_invalid_grids(self):
        with pytest.raises(ValueError, match="must not be empty"):
            ModelSpec(ModelFamily.NB, grid={"var_smoothing": []})
        with pytest.raises(ValueError, match="does not take"):
            ModelSpec(ModelFamily.NB, grid={"n_neighbors": [1]})


class TestFit:
    # A fitted model predicts its training labels from projected rows
    def test_fit_and_predict(self):
        X, y = _data()
        model = fit(ModelSpec(ModelFamily.LR), {"l2_strength": 0.1}, X, y)
        predictions = model.predict(model.project(X))
        assert (predictions == y).mean() >= 0.9
        assert model.labels == (0, 1)
        assert model.input_features == 10
        assert model.feature_names == tuple(f"f{i}" for i in range(10))

    # Feature selection keeps the ranked share of columns
    def test_fraction(self):
        X, y = _data()
        model = fit(ModelSpec(ModelFamily.NB), {}, X, y, fraction=0.2)
        assert model.feature_subset == (1, 4)
        assert model.project(X).shape == (150, 2)

    # Exempt columns survive selection
    def test_always_keep(self):
        X, y = _data()
        model = fit(ModelSpec(ModelFamily.NB), {}, X, y, fraction=0.1, always_keep=(9,))
        assert model.feature_subset == (4, 9)

    # Dedup runs before selection and SMOTE sees standardized rows
    def test_pipeline_order(self, mocker):
        X, y = _data(n=60)
        X = np.vstack([X, X[:10]])
        y = np.concatenate([y, y[:10]])
        select_spy = mocker.spy(training_module, "select_features")
        smote_spy = mocker.spy(training_module, "smote")
        fit(ModelSpec(ModelFamily.NB), {}, X, y)
        assert select_spy.call_args.args[0].shape[0] == 60
        smoted = smote_spy.call_args.args[0]
        np.testing.assert_allclose(smoted.mean(axis=0), 0.0, atol=1e-9)

    # Same seed, same model
    def test_deterministic(self):
        X, y = _data()
        first = fit(ModelSpec(ModelFamily.RF), {"n_estimators": 20}, X, y, seed=7)
        second = fit(ModelSpec(ModelFamily.RF), {"n_estimators": 20}, X, y, seed=7)
        np.testing.assert_array_equal(first.predict(first.project(X)), second.predict(second.project(X)))

    # Training needs rows and at least two labels after dedup
    def test_degenerate_training(self):
        with pytest.raises(EmptyTraining):
            fit(ModelSpec(ModelFamily.NB), {}, np.empty((0, 3)), np.empty(0))
        with pytest.raises(SingleClassTraining):
            fit(ModelSpec(ModelFamily.NB), {}, np.ones((4, 2)), np.zeros(4))

    # Feature names must match the columns
    def test_names_arity(self):
        X, y = _data()
        with pytest.raises(ArityMismatch):
            fit(ModelSpec(ModelFamily.NB), {}, X, y, feature_names=["a"])


class TestPredict:
    # A single row is labeled; rows of the wrong width are rejected
    def test_single_row(self):
        X, y = _data()
        model = fit(ModelSpec(ModelFamily.NB), {}, X, y, fraction=0.5)
        row = model.project(X[:1])[0]
        assert predict(model, row) in (0, 1)
        with pytest.raises(ArityMismatch):
            predict(model, X[0])
        with pytest.raises(ArityMismatch):
            model.project(X[:, :3])

    # Families with probabilities expose per-class scores
    def test_scores(self):
        X, y = _data()
        model = fit(ModelSpec(ModelFamily.NB), {}, X, y)
        scores = model.scores(model.project(X[:3]))
        assert scores.shape == (3, 2)
        np.testing.assert_allclose(scores.sum(axis=1), 1.0)
