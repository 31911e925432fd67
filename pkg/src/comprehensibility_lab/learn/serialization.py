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
import binascii
import json
import pickle  # nosec
from typing import Any, Dict

import numpy as np

from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.exceptions import CorruptModel, VersionMismatch
from comprehensibility_lab.learn.preprocessing import Standardizer
from comprehensibility_lab.learn.training import TrainedModel
from comprehensibility_lab.utils.constants import MODEL_FORMAT_VERSION
from comprehensibility_lab.utils.utils import atomic_write_text

REQUIRED_KEYS = (
    "format_version",
    "family",
    "hyperparams",
    "feature_subset",
    "feature_indices",
    "input_features",
    "standardizer",
    "labels",
    "fitted_parameters",
    "catalog_version",
    "master_seed",
)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def serialize(model: TrainedModel) -> bytes:
    """
    Encode a trained model as a versioned JSON envelope; the fitted estimator is
    embedded as a base64 pickle. Keys are sorted so equal models give equal bytes.
    """
    envelope: Dict[str, Any] = {
        "format_version": MODEL_FORMAT_VERSION,
        "family": model.family.value,
        "hyperparams": _jsonable(model.hyperparams),
        "feature_subset": list(model.feature_names),
        "feature_indices": list(model.feature_subset),
        "input_features": model.input_features,
        "fraction": model.fraction,
        "standardizer": {
            "mean": [float(v) for v in model.standardizer.mean],
            "std": [float(v) for v in model.standardizer.std],
        },
        "labels": list(model.labels),
        "fitted_parameters": base64.b64encode(pickle.dumps(model.estimator, protocol=4)).decode("ascii"),
        "catalog_version": model.catalog_version,
        "master_seed": model.seed,
        "metadata": _jsonable(model.metadata),
    }
    return json.dumps(envelope, sort_keys=True, indent=1).encode("utf-8")


def deserialize(data: bytes) -> TrainedModel:
    """
    Raises:
        CorruptModel: if the bytes are not a complete model envelope.
        VersionMismatch: if the envelope uses another format version.
    """
    try:
        envelope = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as error:
        raise CorruptModel(f"Model file is not valid JSON: {error}")
    if not isinstance(envelope, dict):
        raise CorruptModel("Model file does not hold a JSON object")
    if "format_version" in envelope and envelope["format_version"] != MODEL_FORMAT_VERSION:
        raise VersionMismatch(envelope["format_version"], MODEL_FORMAT_VERSION)
    missing = [key for key in REQUIRED_KEYS if key not in envelope]
    if missing:
        raise CorruptModel(f"Model file is missing: {', '.join(missing)}")

    try:
        blob = base64.b64decode(envelope["fitted_parameters"], validate=True)
        estimator = pickle.loads(blob)  # nosec
    except binascii.Error as error:
        raise CorruptModel(f"Fitted parameters are not valid base64: {error}")
    # a damaged pickle can fail with almost any exception type
    except Exception as error:
        raise CorruptModel(f"Fitted parameters cannot be restored: {error!r}") from error

    try:
        return TrainedModel(
            family=ModelFamily(envelope["family"]),
            hyperparams=dict(envelope["hyperparams"]),
            estimator=estimator,
            standardizer=Standardizer(
                mean=np.asarray(envelope["standardizer"]["mean"], dtype=float),
                std=np.asarray(envelope["standardizer"]["std"], dtype=float),
            ),
            feature_subset=tuple(int(i) for i in envelope["feature_indices"]),
            feature_names=tuple(envelope["feature_subset"]),
            input_features=int(envelope["input_features"]),
            labels=tuple(int(label) for label in envelope["labels"]),
            seed=int(envelope["master_seed"]),
            fraction=float(envelope.get("fraction", 1.0)),
            catalog_version=str(envelope["catalog_version"]),
            metadata=dict(envelope.get("metadata") or {}),
        )
    except (KeyError, TypeError, ValueError) as error:
        raise CorruptModel(f"Model envelope is malformed: {error}")


def save_model(model: TrainedModel, path: str) -> None:
    atomic_write_text(path, serialize(model).decode("utf-8"))


def load_model(path: str) -> TrainedModel:
    with open(path, "rb") as handle:
        return deserialize(handle.read())
