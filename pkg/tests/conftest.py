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

import csv
from typing import Dict, List, Sequence

import numpy as np
import pytest

from comprehensibility_lab.dataset.measurements import MeasurementRecord
from comprehensibility_lab.extract.catalog import FEATURE_COUNT
from comprehensibility_lab.extract.corpus import FeatureTable

DS1_SNIPPETS = 50
DS1_RECORDS = 440
DS1_PARTICIPANTS = 63
DS1_PBU_ONES = 304

# (group size, judgments per snippet, AU sum per snippet); snippets of one group
# share a mean AU score and no two groups do
DS1_AU_GROUPS = (
    [(8, 9, 5), (7, 9, 8)]
    + [(2, 9, s) for s in (0, 1, 2, 3, 4, 6)]
    + [(2, 8, 11)]
    + [(1, 8, s) for s in (1, 2, 3, 5, 6, 7, 9, 10)]
    + [(2, 9, s) for s in (14, 15)]
    + [(1, 9, s) for s in range(16, 25)]
)
# snippet-wise AU: scores below 1.5 round into class 0
DS1_AU_SNIPPET_WISE = {0: 37, 1: 13}
# squared group sizes: self pairs plus tied ordered pairs
DS1_AU_TIES = 166

DS2_PARTICIPANTS = 121
DS2_SNIPPETS = 100


def _spread(total: int, count: int) -> List[int]:
    base, extra = divmod(total, count)
    return [base + 1] * extra + [base] * (count - extra)


def ds1_records() -> List[MeasurementRecord]:
    records: List[MeasurementRecord] = []
    snippet = 0
    for size, count, au_sum in DS1_AU_GROUPS:
        for _ in range(size):
            for judgment, au in enumerate(_spread(au_sum, count)):
                participant = (snippet * 9 + judgment) % DS1_PARTICIPANTS
                records.append(
                    MeasurementRecord(
                        dataset_id="ds1",
                        snippet_id=f"s{snippet:02d}",
                        participant_id=f"p{participant:02d}",
                        au=au,
                        pbu=1 if len(records) < DS1_PBU_ONES else 0,
                        rl=1 + (snippet + judgment) % 5,
                        developer_features={
                            "experience": float(participant % 7),
                            "position": float(1 + participant % 4),
                        },
                    )
                )
            snippet += 1
    return records


def ds2_records() -> List[MeasurementRecord]:
    return [
        MeasurementRecord(
            dataset_id="ds2",
            snippet_id=f"t{snippet:03d}",
            participant_id=f"q{participant:03d}",
            rl=1 + (participant * 7 + snippet * 3) % 5,
        )
        for snippet in range(DS2_SNIPPETS)
        for participant in range(DS2_PARTICIPANTS)
    ]


def feature_table(snippet_ids: Sequence[str], seed: int = 0) -> FeatureTable:
    rng = np.random.default_rng(seed)
    return FeatureTable(
        snippet_ids=list(snippet_ids),
        values=rng.normal(size=(len(snippet_ids), FEATURE_COUNT)),
    )


def write_measurements(path, records: Sequence[MeasurementRecord]) -> str:
    developer_names = sorted({name for r in records for name in r.developer_features})
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["dataset_id", "snippet_id", "participant_id", "AU", "PBU", "RL"]
            + [f"dev_{name}" for name in developer_names]
        )
        for r in records:
            writer.writerow(
                [r.dataset_id, r.snippet_id, r.participant_id]
                + ["" if v is None else v for v in (r.au, r.pbu, r.rl)]
                + [r.developer_features.get(name, "") for name in developer_names]
            )
    return str(path)


@pytest.fixture(scope="session")
def ds1() -> List[MeasurementRecord]:
    return ds1_records()


@pytest.fixture(scope="session")
def ds1_snippet_ids(ds1) -> List[str]:
    return sorted({record.snippet_id for record in ds1})


@pytest.fixture(scope="session")
def ds1_features(ds1_snippet_ids) -> FeatureTable:
    return feature_table(ds1_snippet_ids)


@pytest.fixture(scope="session")
def ds2() -> List[MeasurementRecord]:
    return ds2_records()


@pytest.fixture
def ds1_csv(tmp_path, ds1) -> str:
    return write_measurements(tmp_path / "measurements.csv", ds1)


@pytest.fixture
def make_feature_table():
    def _make(snippet_ids: Sequence[str], seed: int = 0) -> FeatureTable:
        return feature_table(snippet_ids, seed)

    return _make


@pytest.fixture
def planted_rc() -> Dict[str, np.ndarray]:
    """
    A pairwise dataset whose label is the sign of the difference of one
    snippet feature, with 5% of the labels flipped.
    """
    rng = np.random.default_rng(11)
    n_snippets = 40
    snippets = rng.permutation(n_snippets).astype(float).reshape(n_snippets, 1)
    scores = snippets[:, 0]
    rows, labels = [], []
    for first in range(n_snippets):
        for second in range(n_snippets):
            if first == second:
                continue
            rows.append(np.concatenate([snippets[first], snippets[second]]))
            labels.append(0 if scores[first] > scores[second] else 1)
    y = np.array(labels)
    flip = rng.random(len(y)) < 0.05
    y[flip] = 1 - y[flip]
    return {"X": np.vstack(rows), "y": y}


@pytest.fixture
def separable_rc_three_class() -> Dict[str, np.ndarray]:
    """
    All ordered pairs (self pairs included) of 15 snippets on five score levels.
    The label is 0 when the first scores higher, 1 when lower and 2 when equal.
    """
    scores = np.repeat(np.arange(5.0), 3)
    rows, labels = [], []
    for first in scores:
        for second in scores:
            rows.append([first, second])
            labels.append(0 if first > second else 1 if first < second else 2)
    return {"X": np.array(rows), "y": np.array(labels)}
