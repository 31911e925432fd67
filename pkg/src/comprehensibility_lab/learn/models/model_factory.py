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

from typing import Any, Dict, Type

from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.learn.models.knn import KNearestNeighborsModel
from comprehensibility_lab.learn.models.logistic_regression import LogisticRegressionModel
from comprehensibility_lab.learn.models.mlp import MultilayerPerceptronModel
from comprehensibility_lab.learn.models.model import AbstractModel
from comprehensibility_lab.learn.models.naive_bayes import NaiveBayesModel
from comprehensibility_lab.learn.models.random_forest import RandomForestModel
from comprehensibility_lab.learn.models.svm import SupportVectorModel


def model_class(family: ModelFamily) -> Type[AbstractModel]:
    """The AbstractModel subclass implementing `family`."""
    if family == ModelFamily.NB:
        return NaiveBayesModel
    elif family == ModelFamily.KNN:
        return KNearestNeighborsModel
    elif family == ModelFamily.LR:
        return LogisticRegressionModel
    elif family == ModelFamily.MLP:
        return MultilayerPerceptronModel
    elif family == ModelFamily.RF:
        return RandomForestModel
    elif family == ModelFamily.SVM:
        return SupportVectorModel
    else:
        raise NotImplementedError(f"Model family {family} is not supported")


def create_model(family: ModelFamily, hyperparams: Dict[str, Any], seed: int) -> AbstractModel:
    return model_class(family)(hyperparams, seed)
