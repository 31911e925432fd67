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

from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List

from comprehensibility_lab.exceptions import EmptyDataset


@dataclass(frozen=True)
class ClassDistribution:
    """Exact per-label counts; frequencies are derived from them."""

    counts: Dict[int, int]

    def __post_init__(self):
        if self.total < 1:
            raise EmptyDataset("A class distribution needs at least one instance")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def labels(self) -> List[int]:
        return sorted(self.counts)

    @property
    def frequencies(self) -> Dict[int, float]:
        total = self.total
        return {label: self.counts[label] / total for label in self.labels}

    def share(self, label: int) -> float:
        return self.counts.get(label, 0) / self.total

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.total,
            "counts": {str(label): self.counts[label] for label in self.labels},
            "frequencies": {str(label): p for label, p in self.frequencies.items()},
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ClassDistribution":
        return cls({int(label): int(count) for label, count in payload["counts"].items()})


def class_distribution(items: Iterable[Any]) -> ClassDistribution:
    """
    Distribution of labels; accepts labeled instances or bare labels.

    Raises:
        EmptyDataset: if there is nothing to count.
    """
    counts = Counter(int(getattr(item, "label", item)) for item in items)
    if not counts:
        raise EmptyDataset("Cannot compute the class distribution of an empty dataset")
    return ClassDistribution(dict(counts))
