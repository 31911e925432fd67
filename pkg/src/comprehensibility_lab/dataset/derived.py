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
from typing import Optional

from comprehensibility_lab.dataset.measurements import MeasurementRecord
from comprehensibility_lab.enums.metric import Metric
from comprehensibility_lab.exceptions import MissingMetric


@dataclass(frozen=True)
class DerivedMetrics:
    au: Optional[int] = None
    pbu: Optional[int] = None
    abu: Optional[int] = None
    abu50: Optional[int] = None
    bd: Optional[int] = None
    bd50: Optional[int] = None
    rl: Optional[int] = None

    def value(self, metric: Metric) -> int:
        value = getattr(self, metric.value.lower())
        if value is None:
            raise MissingMetric(f"{metric.value} cannot be derived from this record")
        return value

    def has(self, metric: Metric) -> bool:
        return getattr(self, metric.value.lower()) is not None


def derive_metrics(record: MeasurementRecord) -> DerivedMetrics:
    """
    Fill every metric derivable from the record's raw judgments:
    ABU = [AU == 3], ABU50 = [AU >= 2], BD = [PBU == 1 and ABU == 0],
    BD50 = [PBU == 1 and ABU50 == 0].
    """
    abu = abu50 = bd = bd50 = None
    if record.au is not None:
        abu = int(record.au == 3)
        abu50 = int(record.au >= 2)
        if record.pbu is not None:
            bd = int(record.pbu == 1 and abu == 0)
            bd50 = int(record.pbu == 1 and abu50 == 0)
    return DerivedMetrics(
        au=record.au,
        pbu=record.pbu,
        abu=abu,
        abu50=abu50,
        bd=bd,
        bd50=bd50,
        rl=record.rl,
    )


def metric_value(record: MeasurementRecord, metric: Metric) -> int:
    """
    Raises:
        MissingMetric: if the record lacks the inputs of `metric`.
    """
    return derive_metrics(record).value(metric)


def carries(record: MeasurementRecord, metric: Metric) -> bool:
    return derive_metrics(record).has(metric)
