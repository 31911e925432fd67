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
from typing import Any, Dict, Sequence, Tuple

import numpy as np
from sklearn.metrics import confusion_matrix


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """Counts over `labels`; rows are true labels, columns predicted labels."""

    labels: Tuple[int, ...]
    matrix: np.ndarray

    @classmethod
    def from_predictions(
        cls, y_true: Sequence[int], y_pred: Sequence[int], labels: Sequence[int]
    ) -> "ConfusionMatrix":
        labels = tuple(int(label) for label in labels)
        return cls(labels=labels, matrix=confusion_matrix(y_true, y_pred, labels=list(labels)))

    @classmethod
    def empty(cls, labels: Sequence[int]) -> "ConfusionMatrix":
        labels = tuple(int(label) for label in labels)
        return cls(labels=labels, matrix=np.zeros((len(labels), len(labels)), dtype=int))

    @property
    def total(self) -> int:
        return int(self.matrix.sum())

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        if self.labels != other.labels:
            raise ValueError(f"Cannot pool confusion matrices over {self.labels} and {other.labels}")
        return ConfusionMatrix(labels=self.labels, matrix=self.matrix + other.matrix)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ConfusionMatrix)
            and self.labels == other.labels
            and np.array_equal(self.matrix, other.matrix)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"labels": list(self.labels), "matrix": self.matrix.astype(int).tolist()}

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ConfusionMatrix":
        return cls(labels=tuple(payload["labels"]), matrix=np.asarray(payload["matrix"], dtype=int))
