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

import base64
import json

import numpy as np
import pytest

from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.exceptions import CorruptModel, VersionMismatch
from comprehensibility_lab.learn.serialization import deserialize, load_model, save_model, serialize
from comprehensibility_lab.learn.training import ModelSpec, fit


@pytest.fixture(scope="module")
def trained():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(80, 6))
    y = (X[:, 0] > 0).astype(int)
    model = fit(ModelSpec(ModelFamily.RF), {"n_estimators": 10, "max_depth": None}, X, y, fraction=0.5, seed=3)
    return model, X


class TestSerialization:
    # A restored model predicts exactly like the original
    def test_round_trip(self, trained, tmp_path):
        model, X = trained
        path = str(tmp_path / "model.json")
        save_model(model, path)
        restored = load_model(path)
        assert restored.family is ModelFamily.RF
        assert restored.hyperparams == {"n_estimators": 10, "max_depth": None}
        assert restored.feature_subset == model.feature_subset
        assert restored.labels == model.labels
        np.testing.assert_array_equal(restored.predict(restored.project(X)), model.predict(model.project(X)))

    # The envelope is sorted JSON with a format version
    def test_envelope(self, trained):
        model, _ = trained
        envelope = json.loads(serialize(model))
        assert envelope["format_version"] == 1
        assert envelope["master_seed"] == 3
        assert envelope["fraction"] == 0.5
        assert list(envelope) == sorted(envelope)

    # Other format versions are refused
    def test_version_mismatch(self, trained):
        envelope = json.loads(serialize(trained[0]))
        envelope["format_version"] = 2
        with pytest.raises(VersionMismatch, match="version 2"):
            deserialize(json.dumps(envelope).encode())

    # Damaged files are reported as corrupt
    @pytest.mark.parametrize(
        "mutate",
        [
            lambda e: e.pop("labels"),
            lambda e: e.update(fitted_parameters="not base64!"),
            lambda e: e.update(fitted_parameters=base64.b64encode(b"garbage").decode()),
            lambda e: e.update(family="XGB"),
        ],
    )
    def test_corrupt(self, trained, mutate):
        envelope = json.loads(serialize(trained[0]))
        mutate(envelope)
        with pytest.raises(CorruptModel):
            deserialize(json.dumps(envelope).encode())

    # Non-JSON bytes are corrupt too
    def test_not_json(self):
        with pytest.raises(CorruptModel):
            deserialize(b"\x00\x01")
        with pytest.raises(CorruptModel):
            deserialize(b"[1, 2]")

    # A pickle naming a module that is not installed is corrupt, not an import failure
    def test_unknown_module_in_pickle(self, trained):
        envelope = json.loads(serialize(trained[0]))
        envelope["fitted_parameters"] = base64.b64encode(b"cmissing_estimator_module\nForest\n.").decode()
        with pytest.raises(CorruptModel, match="ModuleNotFoundError"):
            deserialize(json.dumps(envelope).encode())

    # Whatever the unpickler raises surfaces as CorruptModel
    @pytest.mark.parametrize("error", [IndexError("list index out of range"), KeyError("memo"), ImportError("x")])
    def test_unpickling_errors_are_corrupt(self, trained, mocker, error):
        mocker.patch("comprehensibility_lab.learn.serialization.pickle.loads", side_effect=error)
        with pytest.raises(CorruptModel) as raised:
            deserialize(serialize(trained[0]))
        assert raised.value.__cause__ is error
