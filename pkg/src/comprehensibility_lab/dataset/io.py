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

import os
from typing import Any, Dict, List, Sequence

import pandas as pd

from comprehensibility_lab.dataset.builder import ConflictReport, LabeledInstance, to_arrays
from comprehensibility_lab.dataset.distribution import ClassDistribution
from comprehensibility_lab.utils.constants import FLOAT_FORMAT
from comprehensibility_lab.utils.utils import atomic_write_json, atomic_write_text

INSTANCES_FILE = "instances.csv"
MANIFEST_FILE = "manifest.json"


def instances_frame(
    instances: Sequence[LabeledInstance], key_columns: Sequence[str], feature_columns: Sequence[str]
) -> pd.DataFrame:
    X, y = to_arrays(instances)
    frame = pd.DataFrame(X.reshape(len(instances), len(feature_columns)), columns=list(feature_columns))
    for position, column in enumerate(key_columns):
        frame.insert(position, column, [instance.keys[position] for instance in instances])
    frame["label"] = y
    return frame


def write_dataset(
    output_dir: str,
    instances: Sequence[LabeledInstance],
    distribution: ClassDistribution,
    key_columns: Sequence[str],
    feature_columns: Sequence[str],
    manifest: Dict[str, Any],
    conflicts: ConflictReport,
) -> List[str]:
    """
    Write instances.csv and manifest.json into output_dir.

    Returns:
        the paths written.
    """
    os.makedirs(output_dir, exist_ok=True)
    instances_path = os.path.join(output_dir, INSTANCES_FILE)
    manifest_path = os.path.join(output_dir, MANIFEST_FILE)

    frame = instances_frame(instances, key_columns, feature_columns)
    atomic_write_text(instances_path, frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"))
    atomic_write_json(
        manifest_path,
        {
            **manifest,
            "instance_count": len(instances),
            "class_distribution": distribution.to_dict(),
            "conflicts": conflicts.to_dict(),
            "instances_path": INSTANCES_FILE,
        },
    )
    return [instances_path, manifest_path]
