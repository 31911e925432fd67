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

from sklearn.base import BaseEstimator
from sklearn.neighbors import KNeighborsClassifier

from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.learn.models.model import AbstractModel


class KNearestNeighborsModel(AbstractModel):
    family = ModelFamily.KNN
    default_grid = {"n_neighbors": [1, 3, 5, 7, 11], "metric": ["euclidean", "manhattan"]}

    def build_estimator(self, n_train: int) -> BaseEstimator:
        # small folds can hold fewer rows than k
        return KNeighborsClassifier(
            n_neighbors=max(1, min(int(self.param("n_neighbors")), n_train)),
            metric=str(self.param("metric")),
        )
