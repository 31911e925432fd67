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

from dataclasses import asdict, dataclass
from typing import Any, Dict, Sequence

from comprehensibility_lab.exceptions import ZeroBaseline


def relative_improvement(model_value: float, baseline_value: float) -> float:
    """
    (model - baseline) / baseline.

    Raises:
        ZeroBaseline: if the baseline is not positive.
    """
    if not baseline_value > 0:
        raise ZeroBaseline(f"Relative improvement needs a positive baseline, got {baseline_value}")
    return (model_value - baseline_value) / baseline_value


def delta_ri(ri_rc: float, ri_ac: float) -> float:
    """How much more the relative task improves over its baseline than the absolute one."""
    return ri_rc - ri_ac


def share_positive(improvements: Sequence[float]) -> float:
    """Share of trained models that beat their baseline; 0 for no models."""
    if not improvements:
        return 0.0
    return sum(1 for ri in improvements if ri > 0) / len(improvements)


@dataclass(frozen=True)
class ImprovementReport:
    model_value: float
    baseline_value: float
    ri: float

    @classmethod
    def of(cls, model_value: float, baseline_value: float) -> "ImprovementReport":
        return cls(model_value, baseline_value, relative_improvement(model_value, baseline_value))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
