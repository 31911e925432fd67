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
from typing import Any, Dict, Mapping, Optional, Union

from comprehensibility_lab.dataset.distribution import ClassDistribution
from comprehensibility_lab.enums.baseline_kind import BaselineKind

Distribution = Union[ClassDistribution, Mapping[int, float]]


def _frequencies(distribution: Distribution) -> Dict[int, float]:
    if isinstance(distribution, ClassDistribution):
        return distribution.frequencies
    total = sum(distribution.values())
    if abs(total - 1) > 1e-6:
        raise ValueError(f"Class frequencies sum to {total}, expected 1")
    return {int(label): float(p) for label, p in sorted(distribution.items())}


def lazy_wf1(p: float) -> float:
    """wF1 of always predicting a class of frequency p: F1 = 2p / (1 + p), weighted by p."""
    return 2 * p * p / (1 + p)


def random_wf1(distribution: Distribution) -> float:
    """Expected wF1 of predicting labels at their own frequencies: sum of p squared."""
    return sum(p * p for p in _frequencies(distribution).values())


def baseline_wf1(distribution: Distribution, kind: BaselineKind, label: Optional[int] = None) -> float:
    if kind is BaselineKind.RANDOM:
        return random_wf1(distribution)
    frequencies = _frequencies(distribution)
    if label not in frequencies:
        raise ValueError(f"Lazy baseline needs one of the labels {sorted(frequencies)}, got {label}")
    return lazy_wf1(frequencies[label])


@dataclass(frozen=True)
class Baseline:
    kind: BaselineKind
    label: Optional[int]
    value: float

    @property
    def name(self) -> str:
        """MB<label> for lazy models, RB for the random model."""
        return f"MB{self.label}" if self.kind is BaselineKind.LAZY else "RB"


@dataclass(frozen=True)
class BaselineReport:
    lazy: Dict[int, float]
    random: float
    best: Baseline

    @property
    def majority(self) -> float:
        return max(self.lazy.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lazy": {str(label): value for label, value in sorted(self.lazy.items())},
            "majority": self.majority,
            "random": self.random,
            "best": {"kind": self.best.kind.value, "label": self.best.label, "name": self.best.name, "value": self.best.value},
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "BaselineReport":
        best = payload["best"]
        return cls(
            lazy={int(label): value for label, value in payload["lazy"].items()},
            random=payload["random"],
            best=Baseline(BaselineKind(best["kind"]), best["label"], best["value"]),
        )


def best_baseline(distribution: Distribution) -> Baseline:
    """
    Strongest naive baseline. Lazy models are tried in label order before the
    random model; an earlier candidate keeps the spot on ties.
    """
    frequencies = _frequencies(distribution)
    best: Optional[Baseline] = None
    for label, p in frequencies.items():
        candidate = Baseline(BaselineKind.LAZY, label, lazy_wf1(p))
        if best is None or candidate.value > best.value:
            best = candidate
    random_candidate = Baseline(BaselineKind.RANDOM, None, random_wf1(frequencies))
    if best is None or random_candidate.value > best.value:
        best = random_candidate
    return best


def baseline_report(distribution: Distribution) -> BaselineReport:
    frequencies = _frequencies(distribution)
    return BaselineReport(
        lazy={label: lazy_wf1(p) for label, p in frequencies.items()},
        random=random_wf1(frequencies),
        best=best_baseline(frequencies),
    )
