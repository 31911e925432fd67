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
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from comprehensibility_lab.exceptions import CorpusError, ParseError
from comprehensibility_lab.extract.catalog import FEATURE_COUNT, FEATURE_NAMES
from comprehensibility_lab.extract.features import FeatureVector, Snippet, extract_features
from comprehensibility_lab.utils.constants import FLOAT_FORMAT
from comprehensibility_lab.utils.utils import max_threads

logger = logging.getLogger(__name__)

MANIFEST_COLUMNS = ("snippet_id", "dataset_id", "path")


@dataclass(frozen=True)
class SkipRecord:
    """A snippet left out in lenient mode; line and column are 0 for a repeated id."""

    snippet_id: str
    reason: str
    line: int
    column: int


@dataclass
class FeatureTable:
    """Feature vectors of a corpus, one row per snippet in input order."""

    snippet_ids: List[str]
    values: np.ndarray
    skipped: List[SkipRecord] = field(default_factory=list)

    def __post_init__(self):
        if self.values.shape != (len(self.snippet_ids), FEATURE_COUNT):
            raise ValueError(
                f"Feature matrix has shape {self.values.shape}, "
                f"expected ({len(self.snippet_ids)}, {FEATURE_COUNT})"
            )
        repeated = _repeated(self.snippet_ids)
        if repeated:
            raise ValueError(f"Feature table repeats snippet id(s): {', '.join(repeated)}")

    def __len__(self) -> int:
        return len(self.snippet_ids)

    @property
    def index(self) -> Dict[str, int]:
        return {snippet_id: i for i, snippet_id in enumerate(self.snippet_ids)}

    def row(self, snippet_id: str) -> np.ndarray:
        return self.values[self.index[snippet_id]]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.values, columns=list(FEATURE_NAMES))
        frame.insert(0, "snippet_id", self.snippet_ids)
        return frame

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")

    @classmethod
    def from_csv(cls, path: str) -> "FeatureTable":
        frame = pd.read_csv(path, dtype={"snippet_id": str})
        expected = ["snippet_id", *FEATURE_NAMES]
        if list(frame.columns) != expected:
            missing = [column for column in expected if column not in frame.columns]
            raise ValueError(
                f"Feature table {path} does not match the catalog"
                + (f"; missing columns: {', '.join(missing)}" if missing else "; column order differs")
            )
        return cls(
            snippet_ids=frame["snippet_id"].tolist(),
            values=frame[list(FEATURE_NAMES)].to_numpy(dtype=float),
        )

    @classmethod
    def from_vectors(cls, vectors: Sequence[FeatureVector], skipped: Sequence[SkipRecord] = ()):
        values = np.array([v.values for v in vectors], dtype=float).reshape(len(vectors), FEATURE_COUNT)
        return cls(snippet_ids=[v.snippet_id for v in vectors], values=values, skipped=list(skipped))


def _repeated(snippet_ids: Sequence[str]) -> List[str]:
    """Ids occurring more than once, in order of their second occurrence."""
    seen: Set[str] = set()
    repeated: List[str] = []
    for snippet_id in snippet_ids:
        if snippet_id in seen and snippet_id not in repeated:
            repeated.append(snippet_id)
        seen.add(snippet_id)
    return repeated


def _read_source(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def load_snippets(path: str) -> List[Snippet]:
    """
    Load snippets from a single .java file, a directory of .java files
    (id = file stem, dataset id = directory name) or a manifest CSV
    with columns snippet_id,dataset_id,path (paths relative to the manifest).
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"The path {path} does not exist.")

    if os.path.isdir(path):
        dataset_id = os.path.basename(os.path.normpath(path))
        names = sorted(name for name in os.listdir(path) if name.endswith(".java"))
        return [
            Snippet(id=name[: -len(".java")], dataset_id=dataset_id, source=_read_source(os.path.join(path, name)))
            for name in names
        ]

    if path.endswith(".java"):
        stem = os.path.basename(path)[: -len(".java")]
        dataset_id = os.path.basename(os.path.dirname(os.path.abspath(path)))
        return [Snippet(id=stem, dataset_id=dataset_id, source=_read_source(path))]

    manifest = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = [column for column in MANIFEST_COLUMNS if column not in manifest.columns]
    if missing:
        raise ValueError(f"The following columns are missing in {path}: {', '.join(missing)}")
    root = os.path.dirname(os.path.abspath(path))
    return [
        Snippet(
            id=row.snippet_id,
            dataset_id=row.dataset_id,
            source=_read_source(os.path.join(root, row.path)),
        )
        for row in manifest.itertuples(index=False)
    ]


def _try_extract(snippet: Snippet) -> Union[FeatureVector, ParseError]:
    try:
        return extract_features(snippet)
    except ParseError as error:
        return error


def extract_corpus(
    snippets: Sequence[Snippet],
    strict: bool = True,
    threads: Optional[int] = None,
) -> FeatureTable:
    """
    Extract feature vectors for every snippet, keeping input order.

    Args:
        snippets: the corpus.
        strict: when True any parse failure fails the batch; otherwise
            failing snippets and later repeats of an id are skipped and recorded
            in `FeatureTable.skipped`.
        threads: worker count, defaults to the environment cap.

    Raises:
        CorpusError: in strict mode, listing every failing or repeated snippet id.
    """
    duplicates = _repeated([snippet.id for snippet in snippets])
    if duplicates and strict:
        raise CorpusError([], duplicates)
    seen: Set[str] = set()
    unique: List[Snippet] = []
    repeats: List[SkipRecord] = []
    for snippet in snippets:
        if snippet.id in seen:
            repeats.append(SkipRecord(snippet_id=snippet.id, reason="repeated snippet id", line=0, column=0))
            continue
        seen.add(snippet.id)
        unique.append(snippet)
    snippets = unique

    workers = threads if threads is not None else max_threads()
    if workers > 1 and len(snippets) > 1:
        results = Parallel(n_jobs=workers, prefer="threads")(
            delayed(_try_extract)(snippet) for snippet in snippets
        )
    else:
        results = [_try_extract(snippet) for snippet in snippets]

    failures: List[Tuple[str, ParseError]] = [
        (snippet.id, result) for snippet, result in zip(snippets, results) if isinstance(result, ParseError)
    ]
    if failures and strict:
        raise CorpusError(failures)

    skipped = repeats + [
        SkipRecord(snippet_id=snippet_id, reason=str(error), line=error.line, column=error.column)
        for snippet_id, error in failures
    ]
    for record in skipped:
        logger.warning(f"Skipping snippet {record.snippet_id}: {record.reason}")

    vectors = [result for result in results if isinstance(result, FeatureVector)]
    return FeatureTable.from_vectors(vectors, skipped)
