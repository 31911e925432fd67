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
from typing import Any, Dict, List, Sequence

from comprehensibility_lab.dataset.distribution import ClassDistribution
from comprehensibility_lab.evaluation.baselines import Baseline, best_baseline

# published cells are rounded to three decimals
TOLERANCE = 0.001


@dataclass(frozen=True)
class ReferenceCell:
    """A published baseline cell together with the class counts it was computed from."""

    task: str
    setting: str
    metric: str
    published_name: str
    published_value: float
    counts: Dict[int, int]

    @property
    def distribution(self) -> ClassDistribution:
        return ClassDistribution(dict(self.counts))


@dataclass(frozen=True)
class ReferenceCheck:
    cell: ReferenceCell
    recomputed: Baseline

    @property
    def value_matches(self) -> bool:
        return abs(self.recomputed.value - self.cell.published_value) <= TOLERANCE

    @property
    def kind_matches(self) -> bool:
        return self.recomputed.name == self.cell.published_name

    def to_dict(self) -> Dict[str, Any]:
        return {
            "task": self.cell.task,
            "setting": self.cell.setting,
            "metric": self.cell.metric,
            "published": f"{self.cell.published_name} {self.cell.published_value:.3f}",
            "recomputed": f"{self.recomputed.name} {self.recomputed.value:.3f}",
            "value_matches": self.value_matches,
            "kind_matches": self.kind_matches,
        }


# published class distributions of the two comprehension studies
REFERENCE_CELLS: List[ReferenceCell] = [
    ReferenceCell("AC", "snippet-wise", "AU", "MB0", 0.629, {0: 37, 1: 13}),
    ReferenceCell("AC", "snippet-wise", "ABU50", "RB", 0.513, {0: 29, 1: 21}),
    ReferenceCell("AC", "snippet-wise", "BD", "RB", 0.507, {0: 28, 1: 22}),
    ReferenceCell("AC", "snippet-wise", "RL", "RB", 0.395, {2: 13, 3: 44, 4: 43}),
    ReferenceCell("AC", "developer-wise", "AU", "RB", 0.277, {0: 153, 1: 72, 2: 138, 3: 77}),
    ReferenceCell("AC", "developer-wise", "PBU", "RB", 0.573, {0: 136, 1: 304}),
    ReferenceCell("AC", "developer-wise", "ABU", "MB0", 0.746, {0: 363, 1: 77}),
    ReferenceCell("AC", "developer-wise", "BD50", "MB0", 0.708, {0: 351, 1: 89}),
    ReferenceCell("RC", "snippet-wise", "AU", "RB", 0.440, {0: 1168, 1: 1168, 2: 164}),
    ReferenceCell("RC", "snippet-wise", "ABU", "MB0", 0.359, {0: 998, 1: 998, 2: 504}),
    ReferenceCell("RC", "snippet-wise", "BD", "RB", 0.382, {0: 1058, 1: 1058, 2: 384}),
    ReferenceCell("RC", "snippet-wise", "BD50", "MB0", 0.373, {0: 1036, 1: 1036, 2: 428}),
    ReferenceCell("RC", "developer-wise", "AU", "RB", 0.343, {0: 977, 1: 977, 2: 1369}),
    ReferenceCell("RC", "developer-wise", "PBU", "MB2", 0.528, {0: 561, 1: 561, 2: 2201}),
    ReferenceCell("RC", "developer-wise", "ABU", "MB2", 0.656, {0: 399, 1: 399, 2: 2525}),
]


def audit_reference_baselines(cells: Sequence[ReferenceCell] = REFERENCE_CELLS) -> List[ReferenceCheck]:
    """
    Recompute every published baseline cell from its class counts.

    `value_matches` tells whether the strongest baseline reproduces the published
    value; `kind_matches` whether it is also the kind the cell is labelled with.
    """
    return [ReferenceCheck(cell, best_baseline(cell.distribution)) for cell in cells]
