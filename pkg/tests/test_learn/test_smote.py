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

from comprehensibility_lab.exceptions import TooFewSamples
from comprehensibility_lab.learn.smote import SmoteConfig, interpolate, smote


def _imbalanced():
    rng = np.random.default_rng(3)
    X = np.vstack([rng.normal(0, 1, size=(30, 2)), rng.normal(5, 1, size=(6, 2)), rng.normal(-5, 1, size=(3, 2))])
    y = np.array([0] * 30 + [1] * 6 + [2] * 3)
    return X, y


class TestSmote:
    # Every minority class is raised to the majority count, originals first
    def test_balances_classes(self):
        X, y = _imbalanced()
        result = smote(X, y, SmoteConfig(k=5, seed=1))
        assert np.bincount(result.y).tolist() == [30, 30, 30]
        np.testing.assert_array_equal(result.X[: len(X)], X)
        np.testing.assert_array_equal(result.y[: len(y)], y)
        assert result.y[len(y):].tolist() == [1] * 24 + [2] * 27

    # Synthetic rows lie inside the bounding box of their class
    def test_synthetic_rows_interpolate(self):
        X, y = _imbalanced()
        result = smote(X, y, SmoteConfig(k=5, seed=1))
        for label in (1, 2):
            original = X[y == label]
            synthetic = result.X[len(X):][result.y[len(y):] == label]
            assert (synthetic >= original.min(axis=0) - 1e-12).all()
            assert (synthetic <= original.max(axis=0) + 1e-12).all()

    # The same seed gives the same rows
    def test_deterministic(self):
        X, y = _imbalanced()
        first = smote(X, y, SmoteConfig(seed=9))
        second = smote(X, y, SmoteConfig(seed=9))
        np.testing.assert_array_equal(first.X, second.X)

    # Balanced input is returned unchanged
    def test_balanced_noop(self):
        X = np.arange(8.0).reshape(4, 2)
        y = np.array([0, 1, 0, 1])
        result = smote(X, y, SmoteConfig())
        np.testing.assert_array_equal(result.X, X)
        assert result.warnings == []

    # A single-sample class is duplicated with a warning
    def test_single_sample_class(self):
        X = np.array([[0.0], [1.0], [2.0], [9.0]])
        y = np.array([0, 0, 0, 1])
        with pytest.warns(TooFewSamples):
            result = smote(X, y, SmoteConfig())
        assert result.X[4:].ravel().tolist() == [9.0, 9.0]
        assert len(result.warnings) == 1

    # Neighbour count must be positive
    def test_invalid_k(self):
        with pytest.raises(ValueError):
            SmoteConfig(k=0)


def _brute_force_neighbors(samples: np.ndarray, k: int) -> list:
    neighbors = []
    for i, sample in enumerate(samples):
        distances = np.linalg.norm(samples - sample, axis=1)
        distances[i] = np.inf
        neighbors.append(np.argsort(distances)[:k])
    return neighbors


def _on_some_segment(point: np.ndarray, samples: np.ndarray, neighbors: list) -> bool:
    for i, sample in enumerate(samples):
        for j in neighbors[i]:
            direction = samples[j] - sample
            u = float(np.dot(point - sample, direction) / np.dot(direction, direction))
            if -1e-12 <= u < 1.0 and np.allclose(sample + u * direction, point, atol=1e-9):
                return True
    return False


class TestSmoteSegments:
    # Every synthetic row lies between a class sample and one of its k nearest same-class neighbours
    @pytest.mark.parametrize("seed", range(100))
    def test_rows_on_neighbour_segments(self, seed):
        rng = np.random.default_rng(seed)
        minority = int(rng.integers(2, 8))
        X = np.vstack([rng.normal(0, 1, size=(12, 3)), rng.normal(4, 1, size=(minority, 3))])
        y = np.array([0] * 12 + [1] * minority)
        config = SmoteConfig(k=3, seed=seed)
        result = smote(X, y, config)
        samples = X[y == 1]
        neighbors = _brute_force_neighbors(samples, min(config.k, minority - 1))
        for point in result.X[len(X):]:
            assert _on_some_segment(point, samples, neighbors), point

    # Two minority points, k=1 and u=0.5 give their midpoint
    def test_midpoint(self, mocker):
        generator = mocker.Mock()
        generator.integers.side_effect = lambda low, high, size: np.zeros(size, dtype=int)
        generator.random.return_value = np.array([0.5])
        mocker.patch("comprehensibility_lab.learn.smote.np.random.default_rng", return_value=generator)
        X = np.array([[5.0, 5.0], [6.0, 5.0], [5.0, 6.0], [0.0, 0.0], [1.0, 1.0]])
        y = np.array([0, 0, 0, 1, 1])
        result = smote(X, y, SmoteConfig(k=1))
        assert result.X[5:].tolist() == [[0.5, 0.5]]
        assert result.y[5:].tolist() == [1]


class TestInterpolate:
    # u moves along the segment from sample to neighbour
    def test_segment(self):
        a, b = np.array([0.0, 0.0]), np.array([2.0, 4.0])
        assert interpolate(a, b, 0.0).tolist() == [0.0, 0.0]
        assert interpolate(a, b, 0.5).tolist() == [1.0, 2.0]
