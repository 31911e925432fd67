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


class Task(Enum):
    """
    Learning task: absolute (one snippet) or relative (a pair of snippets) comprehensibility
    """

    AC = "AC"
    RC = "RC"

    @classmethod
    def parse(cls, value: str) -> "Task":
        try:
            return cls(value.strip().upper())
        except ValueError:
            raise ValueError(f"Unknown task '{value}'. Valid tasks: AC, RC")
