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
from dataclasses import asdict, dataclass
from typing import Any, Dict, Sequence

import numpy as np
from scipy.special import comb
from scipy.stats import norm, rankdata

from comprehensibility_lab.exceptions import EmptySample

# combined sample sizes up to this use exact enumeration
EXACT_LIMIT = 12

B_GREATER = "b_greater"
A_GREATER = "a_greater"
TWO_SIDED = "two_sided"
ALTERNATIVES = (B_GREATER, A_GREATER, TWO_SIDED)

# tolerance when comparing rank sums
_EPS = 1e-9


@dataclass(frozen=True)
class MannWhitneyResult:
    """U of sample A, its p-value and how it was computed ("exact" or "normal")."""

    u: float
    p_value: float
    method: str
    alternative: str

    def significant(self, alpha: float = 0.05) -> bool:
        return self.p_value < alpha

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _exact_p(ranks: np.ndarray, n_a: int, u: float, alternative: str) -> float:
    offset = n_a * (n_a + 1) / 2
    total = comb(len(ranks), n_a, exact=True)
    lower = upper = 0
    for chosen in itertools.combinations(range(len(ranks)), n_a):
        candidate = ranks[list(chosen)].sum() - offset
        if candidate <= u + _EPS:
            lower += 1
        if candidate >= u - _EPS:
            upper += 1
    if alternative == B_GREATER:
        return lower / total
    if alternative == A_GREATER:
        return upper / total
    return min(1.0, 2 * min(lower, upper) / total)


def _normal_p(ranks: np.ndarray, n_a: int, n_b: int, u: float, alternative: str) -> float:
    n = n_a + n_b
    _, ties = np.unique(ranks, return_counts=True)
    tie_term = float((ties**3 - ties).sum()) / (n * (n - 1))
    variance = n_a * n_b / 12 * ((n + 1) - tie_term)
    if variance <= 0:
        return 1.0
    mean = n_a * n_b / 2
    sigma = np.sqrt(variance)
    lower = float(norm.cdf((u - mean + 0.5) / sigma))
    upper = float(norm.sf((u - mean - 0.5) / sigma))
    if alternative == B_GREATER:
        return lower
    if alternative == A_GREATER:
        return upper
    return min(1.0, 2 * min(lower, upper))


def mann_whitney_u(
    sample_a: Sequence[float], sample_b: Sequence[float], alternative: str = B_GREATER
) -> MannWhitneyResult:
    """
    Unpaired Mann-Whitney U test.

    With the default alternative, small p-values mean sample B tends to be larger
    than sample A. U is computed for sample A from midranks. Combined sizes up to
    EXACT_LIMIT enumerate every rank assignment; larger samples use the normal
    approximation with tie correction and continuity correction.

    Raises:
        EmptySample: if either sample is empty.
    """
    if alternative not in ALTERNATIVES:
        raise ValueError(f"Unknown alternative {alternative!r}, expected one of {ALTERNATIVES}")
    a = np.asarray(sample_a, dtype=float)
    b = np.asarray(sample_b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise EmptySample("Mann-Whitney U needs two non-empty samples")
    ranks = rankdata(np.concatenate([a, b]))
    u = float(ranks[: a.size].sum() - a.size * (a.size + 1) / 2)
    if a.size + b.size <= EXACT_LIMIT:
        return MannWhitneyResult(u, _exact_p(ranks, a.size, u, alternative), "exact", alternative)
    return MannWhitneyResult(u, _normal_p(ranks, a.size, b.size, u, alternative), "normal", alternative)
