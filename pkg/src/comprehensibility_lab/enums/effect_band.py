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


class EffectBand(Enum):
    """
    Effect-size bands applied to correlation-style scores (MCC, kappa)
    """

    NEGLIGIBLE = "negligible"
    SMALL = "small"
    MEDIUM = "medium"
    LARGE = "large"

    @classmethod
    def of(cls, value: float) -> "EffectBand":
        magnitude = abs(value)
        if magnitude > 0.5:
            return cls.LARGE
        if magnitude > 0.3:
            return cls.MEDIUM
        if magnitude > 0.1:
            return cls.SMALL
        return cls.NEGLIGIBLE
