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

import math
from dataclasses import dataclass
from typing import Final, FrozenSet, Sequence, Union

from comprehensibility_lab.dataset.derived import carries, metric_value
from comprehensibility_lab.dataset.measurements import MeasurementRecord
from comprehensibility_lab.enums.metric import Metric
from comprehensibility_lab.enums.polarity import Polarity
from comprehensibility_lab.enums.setting import Setting
from comprehensibility_lab.exceptions import MissingMetric, UnsupportedMetric
from comprehensibility_lab.utils.constants import SNIPPET_WISE_AC_EXCLUDED_REASON

SNIPPET_WISE_AC_EXCLUDED: Final[FrozenSet[Metric]] = frozenset({Metric.PBU, Metric.ABU, Metric.BD50})

FIRST_MORE_COMPREHENSIBLE: Final = 0
SECOND_MORE_COMPREHENSIBLE: Final = 1
EQUALLY_COMPREHENSIBLE: Final = 2


@dataclass(frozen=True)
class AggregatedScore:
    snippet_id: str
    metric: Metric
    score: float
    count: int


@dataclass(frozen=True)
class RcConfig:
    epsilon: float = 0.0
    include_self_pairs: bool = True

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")


def aggregate_snippet(records: Sequence[MeasurementRecord], metric: Metric) -> AggregatedScore:
    """
    Mean of the per-participant values of `metric` over one snippet's records.

    Raises:
        MissingMetric: if no record carries the metric.
        ValueError: if the records belong to different snippets.
    """
    snippet_ids = {record.snippet_id for record in records}
    if len(snippet_ids) > 1:
        raise ValueError(f"Records span several snippets: {', '.join(sorted(snippet_ids))}")
    values = [metric_value(record, metric) for record in records if carries(record, metric)]
    if not values:
        snippet = next(iter(snippet_ids), "<none>")
        raise MissingMetric(f"No record of snippet {snippet} carries {metric.value}")
    # sums of small integers are exact, so equal means compare equal
    return AggregatedScore(
        snippet_id=next(iter(snippet_ids)),
        metric=metric,
        score=math.fsum(values) / len(values),
        count=len(values),
    )


def check_ac_supported(metric: Metric, setting: Setting) -> None:
    if setting is Setting.SNIPPET_WISE and metric in SNIPPET_WISE_AC_EXCLUDED:
        raise UnsupportedMetric(f"{metric.value} is a {SNIPPET_WISE_AC_EXCLUDED_REASON}")


def round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def ac_label(value: Union[AggregatedScore, float, int], metric: Metric, setting: Setting) -> int:
    """
    Absolute-comprehensibility class of a score.

    Snippet-wise, the aggregated score is rounded half-up and AU is then
    merged into two classes ({0, 1} -> 0, {2, 3} -> 1). Developer-wise the raw
    per-participant value is the class.

    Raises:
        UnsupportedMetric: for snippet-wise PBU, ABU and BD50.
    """
    check_ac_supported(metric, setting)
    score = value.score if isinstance(value, AggregatedScore) else float(value)
    if setting is Setting.DEVELOPER_WISE:
        if not float(score).is_integer():
            raise ValueError(f"Developer-wise labels need a raw discrete value, got {score}")
        return int(score)
    rounded = round_half_up(score)
    if metric is Metric.AU:
        return 0 if rounded <= 1 else 1
    return rounded


def rc_label(first: float, second: float, metric: Metric, epsilon: float = 0.0) -> int:
    """
    Relative-comprehensibility label of an ordered pair of scores.

    0 when the first snippet is more comprehensible by more than epsilon,
    1 when the second is, 2 when they are within epsilon. Metrics where lower
    is better (BD, BD50) swap the 0 and 1 outcomes.
    """
    if not epsilon >= 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    difference = first - second
    if difference > epsilon:
        label = FIRST_MORE_COMPREHENSIBLE
    elif -difference > epsilon:
        label = SECOND_MORE_COMPREHENSIBLE
    else:
        return EQUALLY_COMPREHENSIBLE
    if metric.polarity is Polarity.INVERTED:
        return SECOND_MORE_COMPREHENSIBLE if label == FIRST_MORE_COMPREHENSIBLE else FIRST_MORE_COMPREHENSIBLE
    return label
