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

from abc import ABC, abstractmethod
from typing import Any, Dict, List

from sklearn.base import BaseEstimator

from comprehensibility_lab.enums.model_family import ModelFamily


class AbstractModel(ABC):
    """
    A classifier family: its hyperparameter grid and how one grid point
    becomes an unfitted scikit-learn estimator.

    Args:
        hyperparams: one point of the family's grid.
        seed: random state for families that use randomness.
    """

    family: ModelFamily
    default_grid: Dict[str, List[Any]]

    def __init__(self, hyperparams: Dict[str, Any], seed: int):
        self.validate_hyperparams(hyperparams)
        self.hyperparams = dict(hyperparams)
        self.seed = seed

    @classmethod
    def parameter_names(cls) -> List[str]:
        return sorted(cls.default_grid)

    @classmethod
    def validate_hyperparams(cls, hyperparams: Dict[str, Any]) -> None:
        unknown = sorted(set(hyperparams) - set(cls.default_grid))
        if unknown:
            raise ValueError(
                f"{cls.family.value} does not take hyperparameter(s) {', '.join(unknown)}; "
                f"valid names: {', '.join(cls.parameter_names())}"
            )

    def param(self, name: str) -> Any:
        """The grid value of `name`, falling back to the first default."""
        return self.hyperparams.get(name, self.default_grid[name][0])

    @abstractmethod
    def build_estimator(self, n_train: int) -> BaseEstimator:
        """
        Create the unfitted estimator for this grid point.

        Args:
            n_train: number of rows the estimator will be fitted on.
        """
        pass
