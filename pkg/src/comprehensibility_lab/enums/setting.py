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


class Setting(Enum):
    """
    Granularity of a dataset: one instance per snippet, or per (snippet, participant)
    """

    SNIPPET_WISE = "snippet-wise"
    DEVELOPER_WISE = "developer-wise"

    @classmethod
    def parse(cls, value: str) -> "Setting":
        normalized = value.strip().lower().replace("_", "-")
        try:
            return cls(normalized)
        except ValueError:
            raise ValueError(
                f"Unknown setting '{value}'. Valid settings: {', '.join(s.value for s in cls)}"
            )
