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

from enum import Enum

from comprehensibility_lab.enums.polarity import Polarity


class Metric(Enum):
    """
    Comprehensibility proxies measured on, or derived from, human judgments
    """

    AU = "AU"
    PBU = "PBU"
    ABU = "ABU"
    ABU50 = "ABU50"
    BD = "BD"
    BD50 = "BD50"
    RL = "RL"

    @property
    def polarity(self) -> Polarity:
        if self in (Metric.BD, Metric.BD50):
            return Polarity.INVERTED
        return Polarity.NORMAL

    @classmethod
    def parse(cls, value: str) -> "Metric":
        normalized = value.strip().upper().replace("%", "")
        try:
            return cls(normalized)
        except ValueError:
            raise ValueError(
                f"Unknown metric '{value}'. Valid metrics: {', '.join(m.value for m in cls)}"
            )
