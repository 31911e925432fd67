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

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Final, List, Optional, Sequence

import pandas as pd

from comprehensibility_lab.exceptions import MeasurementValueError, SchemaError

logger = logging.getLogger(__name__)

ID_COLUMNS: Final = ("dataset_id", "snippet_id", "participant_id")
METRIC_COLUMNS: Final = ("AU", "PBU", "RL")
REQUIRED_COLUMNS: Final = ID_COLUMNS + METRIC_COLUMNS
DEVELOPER_PREFIX: Final = "dev_"

METRIC_RANGES: Final[Dict[str, Sequence[int]]] = {
    "AU": range(0, 4),
    "PBU": range(0, 2),
    "RL": range(1, 6),
}

# ordinal codes for textual positions; student levels rank below professionals
POSITION_CODES: Final[Dict[str, float]] = {
    "undergraduate": 1.0,
    "bachelor": 1.0,
    "graduate": 2.0,
    "master": 2.0,
    "phd": 3.0,
    "professional": 4.0,
}


@dataclass(frozen=True)
class MeasurementRecord:
    """One participant's judgments of one snippet."""

    dataset_id: str
    snippet_id: str
    participant_id: str
    au: Optional[int] = None
    pbu: Optional[int] = None
    rl: Optional[int] = None
    developer_features: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.au is None and self.pbu is None and self.rl is None:
            raise ValueError(
                f"Record ({self.snippet_id}, {self.participant_id}) carries none of AU, PBU, RL"
            )
        for name, value in (("AU", self.au), ("PBU", self.pbu), ("RL", self.rl)):
            if value is not None and value not in METRIC_RANGES[name]:
                raise ValueError(f"{name}={value} is outside {list(METRIC_RANGES[name])}")


def _parse_metric(raw: str, column: str, row: int) -> Optional[int]:
    text = raw.strip()
    if text == "":
        return None
    try:
        number = float(text)
    except ValueError:
        raise MeasurementValueError(f"{column}={text!r} is not a number", row)
    if not number.is_integer():
        raise MeasurementValueError(f"{column}={text} is not an integer", row)
    value = int(number)
    if value not in METRIC_RANGES[column]:
        allowed = METRIC_RANGES[column]
        raise MeasurementValueError(
            f"{column}={value} is out of range {allowed[0]}..{allowed[-1]}", row
        )
    return value


def _parse_developer_feature(raw: str, column: str, row: int) -> Optional[float]:
    text = raw.strip()
    if text == "":
        return None
    try:
        value = float(text)
    except ValueError:
        code = POSITION_CODES.get(text.lower())
        if code is None:
            raise MeasurementValueError(f"{column}={text!r} is neither numeric nor a known position", row)
        return code
    if not math.isfinite(value):
        raise MeasurementValueError(f"{column}={text} is not finite", row)
    return value


def ingest_measurements(path: str) -> List[MeasurementRecord]:
    """
    Read and validate a measurements CSV.

    Args:
        path: CSV with columns dataset_id,snippet_id,participant_id,AU,PBU,RL
            and any number of dev_<name> developer feature columns; empty cells are absent values.

    Returns:
        one MeasurementRecord per data row, in file order.

    Raises:
        SchemaError: if a required column is missing.
        MeasurementValueError: for malformed or out-of-range cells, with the 1-based data row.
    """
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = [column for column in REQUIRED_COLUMNS if column not in frame.columns]
    if missing:
        raise SchemaError(f"The following columns are missing in {path}: {', '.join(missing)}")

    developer_columns = sorted(c for c in frame.columns if c.startswith(DEVELOPER_PREFIX))
    records: List[MeasurementRecord] = []
    for position, row in enumerate(frame.to_dict(orient="records"), start=1):
        for column in ID_COLUMNS:
            if row[column].strip() == "":
                raise MeasurementValueError(f"{column} is empty", position)
        metrics = {column: _parse_metric(row[column], column, position) for column in METRIC_COLUMNS}
        if all(value is None for value in metrics.values()):
            raise MeasurementValueError("none of AU, PBU, RL is present", position)

        developer_features: Dict[str, float] = {}
        for column in developer_columns:
            value = _parse_developer_feature(row[column], column, position)
            if value is not None:
                developer_features[column[len(DEVELOPER_PREFIX):]] = value

        records.append(
            MeasurementRecord(
                dataset_id=row["dataset_id"].strip(),
                snippet_id=row["snippet_id"].strip(),
                participant_id=row["participant_id"].strip(),
                au=metrics["AU"],
                pbu=metrics["PBU"],
                rl=metrics["RL"],
                developer_features=developer_features,
            )
        )

    logger.info(f"Ingested {len(records)} measurement(s) from {path}")
    return records


def developer_feature_names(records: Sequence[MeasurementRecord]) -> List[str]:
    return sorted({name for record in records for name in record.developer_features})
