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

from pathlib import Path

import numpy as np
import pytest

from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.exceptions import ModelMismatch
from comprehensibility_lab.extract.catalog import FEATURE_COUNT
from comprehensibility_lab.extract.corpus import load_snippets
from comprehensibility_lab.extract.features import extract_features
from comprehensibility_lab.learn.training import ModelSpec, fit
from comprehensibility_lab.runner import compare as compare_module
from comprehensibility_lab.runner.compare import check_compare_model, compare

JAVA_FIXTURES = Path(__file__).parent.parent / "fixtures" / "java"


def _model(width=2 * FEATURE_COUNT, task="RC", setting="snippet-wise"):
    rng = np.random.default_rng(0)
    X = rng.normal(size=(90, width))
    y = np.repeat([0, 1, 2], 30)
    model = fit(ModelSpec(ModelFamily.NB), {"var_smoothing": 1e-9}, X, y)
    model.metadata.update({"task": task, "setting": setting, "metric": "AU", "epsilon": 0.0})
    return model


def _snippet(name):
    return load_snippets(str(JAVA_FIXTURES / f"{name}.java"))[0]


class TestCheckCompareModel:
    # Only snippet-wise relative models over pair features can compare snippets
    @pytest.mark.parametrize(
        "kwargs, message",
        [
            ({"task": "AC"}, "got task=AC setting=snippet-wise"),
            ({"setting": "developer-wise"}, "got task=RC setting=developer-wise"),
            ({"width": FEATURE_COUNT}, f"got {FEATURE_COUNT}"),
        ],
    )
    def test_mismatch(self, kwargs, message):
        with pytest.raises(ModelMismatch, match=message):
            check_compare_model(_model(**kwargs))


class TestCompare:
    # The verdict is the model's label for the concatenated pair
    def test_forward(self):
        model = _model()
        first, second = _snippet("IfFor"), _snippet("Swap")
        verdict = compare(model, first, second)
        row = np.concatenate([extract_features(first).values, extract_features(second).values])
        assert verdict.label == int(model.predict(model.project(row))[0])
        assert sorted(verdict.scores) == ["0", "1", "2"]
        assert sum(verdict.scores.values()) == pytest.approx(1.0)
        assert (verdict.family, verdict.metric, verdict.epsilon) == ("NB", "AU", 0.0)
        assert not verdict.both_orders

    # Mirrored labels under swapping keep the forward label
    @pytest.mark.parametrize("forward, reverse", [(0, 1), (1, 0), (2, 2)])
    def test_orders_agree(self, mocker, forward, reverse):
        mocker.patch.object(compare_module, "_pair_label", side_effect=[(forward, None), (reverse, None)])
        verdict = compare(_model(), _snippet("IfFor"), _snippet("Swap"), both_orders=True)
        assert verdict.label == forward
        assert verdict.reverse_label == reverse
        assert not verdict.disagreement

    # Disagreeing orders are reported as equally comprehensible
    @pytest.mark.parametrize("forward, reverse", [(0, 0), (1, 2), (2, 0)])
    def test_orders_disagree(self, mocker, forward, reverse):
        mocker.patch.object(compare_module, "_pair_label", side_effect=[(forward, None), (reverse, None)])
        verdict = compare(_model(), _snippet("IfFor"), _snippet("Swap"), both_orders=True)
        assert verdict.label == 2
        assert verdict.disagreement
        assert "(orders disagree)" in verdict.describe("a.java", "b.java")

    # The description names both snippets and the meaning of the label
    def test_describe(self, mocker):
        mocker.patch.object(compare_module, "_pair_label", return_value=(1, {"0": 0.2, "1": 0.7, "2": 0.1}))
        verdict = compare(_model(), _snippet("IfFor"), _snippet("Swap"))
        lines = verdict.describe("a.java", "b.java").splitlines()
        assert lines[0] == "a.java vs b.java: 1 (the second snippet is more comprehensible)"
        assert lines[2] == "scores: 0=0.200, 1=0.700, 2=0.100"
        assert verdict.to_dict()["label"] == 1

    # A snippet compared with itself in both orders is always a tie
    def test_self_comparison(self):
        snippet = _snippet("Lambda")
        verdict = compare(_model(), snippet, snippet, both_orders=True)
        assert verdict.label == 2
        assert verdict.reverse_label == compare(_model(), snippet, snippet).label
