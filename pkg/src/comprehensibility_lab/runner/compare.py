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

from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import numpy as np

from comprehensibility_lab.enums.setting import Setting
from comprehensibility_lab.enums.task import Task
from comprehensibility_lab.exceptions import ModelMismatch
from comprehensibility_lab.extract.catalog import FEATURE_COUNT
from comprehensibility_lab.extract.features import FeatureVector, Snippet, extract_features
from comprehensibility_lab.learn.training import TrainedModel

# label under swapped snippet order
_SWAPPED = {0: 1, 1: 0, 2: 2}

_MEANINGS = {
    0: "the first snippet is more comprehensible",
    1: "the second snippet is more comprehensible",
    2: "both snippets are equally comprehensible",
}


@dataclass(frozen=True)
class CompareVerdict:
    label: int
    scores: Optional[Dict[str, float]]
    family: str
    hyperparams: Dict[str, Any]
    metric: Optional[str]
    epsilon: Optional[float]
    both_orders: bool = False
    reverse_label: Optional[int] = None
    disagreement: bool = False

    @property
    def meaning(self) -> str:
        return _MEANINGS.get(self.label, f"label {self.label}")

    def describe(self, first: str, second: str) -> str:
        lines = [
            f"{first} vs {second}: {self.label} ({self.meaning})",
            f"model: {self.family} {self.hyperparams}, metric {self.metric}, epsilon {self.epsilon}",
        ]
        if self.scores is not None:
            lines.append("scores: " + ", ".join(f"{label}={score:.3f}" for label, score in self.scores.items()))
        if self.both_orders:
            lines.append(
                f"reverse order label: {self.reverse_label}"
                + (" (orders disagree)" if self.disagreement else " (orders agree)")
            )
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def check_compare_model(model: TrainedModel) -> None:
    """
    Raises:
        ModelMismatch: unless the model predicts snippet-wise relative comprehensibility.
    """
    task = model.metadata.get("task")
    setting = model.metadata.get("setting")
    if task != Task.RC.value or setting != Setting.SNIPPET_WISE.value:
        raise ModelMismatch(
            f"compare needs a {Task.RC.value} {Setting.SNIPPET_WISE.value} model, "
            f"got task={task} setting={setting}"
        )
    if model.input_features != 2 * FEATURE_COUNT:
        raise ModelMismatch(
            f"compare needs a model over {2 * FEATURE_COUNT} pair features, got {model.input_features}"
        )


def _pair_label(model: TrainedModel, first: FeatureVector, second: FeatureVector):
    row = model.project(np.concatenate([first.values, second.values]).reshape(1, -1))
    label = int(model.predict(row)[0])
    scores = model.scores(row)
    if scores is None:
        return label, None
    return label, {str(l): float(s) for l, s in zip(model.labels, scores[0])}


def compare(model: TrainedModel, first: Snippet, second: Snippet, both_orders: bool = False) -> CompareVerdict:
    """
    Predict which of two snippets is more comprehensible.

    With `both_orders` the pair is also evaluated swapped. The verdict keeps the
    forward label when the swapped label mirrors it, and is 2 otherwise.

    Raises:
        ModelMismatch: for a model of another task or setting.
        ParseError: if either snippet does not parse.
    """
    check_compare_model(model)
    first_vector = extract_features(first)
    second_vector = extract_features(second)
    label, scores = _pair_label(model, first_vector, second_vector)
    metric = model.metadata.get("metric")
    epsilon = model.metadata.get("epsilon")
    if not both_orders:
        return CompareVerdict(label, scores, model.family.value, model.hyperparams, metric, epsilon)

    reverse_label, _ = _pair_label(model, second_vector, first_vector)
    agree = _SWAPPED.get(reverse_label) == label
    return CompareVerdict(
        label=label if agree else 2,
        scores=scores,
        family=model.family.value,
        hyperparams=model.hyperparams,
        metric=metric,
        epsilon=epsilon,
        both_orders=True,
        reverse_label=reverse_label,
        disagreement=not agree,
    )
