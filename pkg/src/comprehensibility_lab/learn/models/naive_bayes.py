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
from sklearn.naive_bayes import GaussianNB

from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.learn.models.model import AbstractModel


class NaiveBayesModel(AbstractModel):
    family = ModelFamily.NB
    default_grid = {"var_smoothing": [1e-9, 1e-6]}

    def build_estimator(self, n_train: int) -> BaseEstimator:
        return GaussianNB(var_smoothing=float(self.param("var_smoothing")))
