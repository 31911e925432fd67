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

from importlib.metadata import PackageNotFoundError, version
from typing import Final, Tuple

DEV_VERSION: Final = "dev"

try:
    _installed_version = version("comprehensibility-lab")
except PackageNotFoundError:
    _installed_version = DEV_VERSION

VERSION: Final = _installed_version

THREADS_ENV_VAR: Final = "COMPREHENSIBILITY_LAB_THREADS"
LOG_LEVEL_ENV_VAR: Final = "COMPREHENSIBILITY_LAB_LOG_LEVEL"

CATALOG_VERSION: Final = "1.0"
MODEL_FORMAT_VERSION: Final = 1

# smallest difference between two means of a binary proxy over nine participants
EPSILON_ONE_NINTH: Final = 1 / 9
EPSILON_LADDER: Final[Tuple[float, ...]] = (0.0, 0.11, 0.22)

FEATURE_FRACTIONS: Final[Tuple[float, ...]] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)

OUTER_FOLDS: Final = 10
INNER_FOLDS: Final = 5
SMOTE_NEIGHBORS: Final = 5
DEFAULT_SEED: Final = 42

SNIPPET_WISE_AC_EXCLUDED_REASON: Final = "metric excluded for snippet-wise experiments"

FLOAT_FORMAT: Final = "%.6f"

# exit codes of the command-line tasks
EXIT_OK: Final = 0
EXIT_INPUT_ERROR: Final = 2
EXIT_ALL_FAILED: Final = 3
EXIT_MODEL_MISMATCH: Final = 4
