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

import itertools

import numpy as np
import pytest
from scipy.stats import mannwhitneyu

from comprehensibility_lab.evaluation.significance import (
    A_GREATER,
    B_GREATER,
    EXACT_LIMIT,
    TWO_SIDED,
    mann_whitney_u,
)
from comprehensibility_lab.exceptions import EmptySample


def _pairwise_u(a, b):
    return sum(1.0 if x > y else 0.5 if x == y else 0.0 for x in a for y in b)


def _enumerated_p(a, b, alternative):
    pooled = list(a) + list(b)
    observed = _pairwise_u(a, b)
    lower = upper = total = 0
    for chosen in itertools.combinations(range(len(pooled)), len(a)):
        rest = [pooled[i] for i in range(len(pooled)) if i not in chosen]
        u = _pairwise_u([pooled[i] for i in chosen], rest)
        total += 1
        lower += u <= observed
        upper += u >= observed
    if alternative == B_GREATER:
        return lower / total
    if alternative == A_GREATER:
        return upper / total
    return min(1.0, 2 * min(lower, upper) / total)


class TestExact:
    # Three smaller values against three larger ones
    def test_separated_samples(self):
        result = mann_whitney_u([1, 2, 3], [4, 5, 6])
        assert result.u == 0
        assert result.p_value == pytest.approx(0.05)
        assert result.method == "exact"
        assert result.significant()

    # U and the p-value match pairwise counting and full enumeration, ties included
    @pytest.mark.parametrize("alternative", [B_GREATER, A_GREATER, TWO_SIDED])
    def test_against_enumeration(self, alternative):
        rng = np.random.default_rng(7)
        for _ in range(60):
            n_a = int(rng.integers(1, 7))
            n_b = int(rng.integers(1, EXACT_LIMIT - n_a + 1))
            a = rng.integers(0, 5, size=n_a).tolist()
            b = rng.integers(0, 5, size=n_b).tolist()
            result = mann_whitney_u(a, b, alternative)
            assert result.u == _pairwise_u(a, b)
            assert result.p_value == pytest.approx(_enumerated_p(a, b, alternative), abs=1e-12)

    # Identical samples are never significant
    def test_identical(self):
        result = mann_whitney_u([0.3, 0.3], [0.3, 0.3], TWO_SIDED)
        assert result.p_value == 1.0
        assert not result.significant()


class TestNormalApproximation:
    # Larger samples follow scipy's asymptotic test with continuity correction
    @pytest.mark.parametrize(
        "alternative, scipy_alternative", [(B_GREATER, "less"), (A_GREATER, "greater"), (TWO_SIDED, "two-sided")]
    )
    def test_against_scipy(self, alternative, scipy_alternative):
        rng = np.random.default_rng(3)
        for _ in range(30):
            a = rng.normal(size=int(rng.integers(7, 20)))
            b = rng.normal(loc=0.5, size=int(rng.integers(7, 20)))
            result = mann_whitney_u(a, b, alternative)
            expected = mannwhitneyu(a, b, alternative=scipy_alternative, method="asymptotic", use_continuity=True)
            assert result.method == "normal"
            assert result.u == pytest.approx(_pairwise_u(a, b))
            assert result.p_value == pytest.approx(expected.pvalue, abs=1e-9)

    # Ties shrink the variance the same way scipy does
    def test_ties(self):
        a = [0.1, 0.2, 0.2, 0.3, 0.3, 0.3, 0.5]
        b = [0.2, 0.3, 0.4, 0.4, 0.5, 0.6, 0.6, 0.7]
        result = mann_whitney_u(a, b)
        expected = mannwhitneyu(a, b, alternative="less", method="asymptotic", use_continuity=True)
        assert result.p_value == pytest.approx(expected.pvalue, abs=1e-9)

    # One value everywhere leaves nothing to test
    def test_constant(self):
        assert mann_whitney_u([1.0] * 8, [1.0] * 8).p_value == 1.0


class TestInputs:
    # Both samples must hold values
    def test_empty(self):
        with pytest.raises(EmptySample):
            mann_whitney_u([], [1.0])

    # Unknown alternatives are rejected
    def test_alternative(self):
        with pytest.raises(ValueError, match="Unknown alternative"):
            mann_whitney_u([1.0], [2.0], "less")

    # Results serialize their fields
    def test_to_dict(self):
        assert mann_whitney_u([1, 2, 3], [4, 5, 6]).to_dict()["method"] == "exact"
