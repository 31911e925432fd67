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

from typing import List, Optional, Sequence, Tuple


class ComprehensibilityLabError(Exception):
    """Root of every error raised by comprehensibility_lab."""


# extract


class ParseError(ComprehensibilityLabError, ValueError):
    """Raised when a snippet is not a single well-formed Java method declaration.

    Args:
        message: Human-readable reason.
        line: 1-based line of the first offending node in the snippet.
        column: 1-based column of the first offending node in the snippet.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class CorpusError(ComprehensibilityLabError):
    """Aggregates per-snippet parse failures and repeated ids of a strict corpus extraction."""

    def __init__(self, failures: Sequence[Tuple[str, ParseError]], duplicates: Sequence[str] = ()):
        self.failures: List[Tuple[str, ParseError]] = list(failures)
        self.duplicates: List[str] = list(duplicates)
        problems = []
        if self.failures:
            details = "; ".join(f"{snippet_id}: {error}" for snippet_id, error in self.failures)
            problems.append(f"{len(self.failures)} snippet(s) failed to parse: {details}")
        if self.duplicates:
            problems.append(f"repeated snippet id(s): {', '.join(self.duplicates)}")
        super().__init__("; ".join(problems))


# dataset


class SchemaError(ComprehensibilityLabError, ValueError):
    pass


class MeasurementValueError(ComprehensibilityLabError, ValueError):
    """An out-of-range or malformed measurement cell, tagged with its 1-based data row."""

    def __init__(self, message: str, row: int):
        self.row = row
        super().__init__(f"row {row}: {message}")


class MissingMetric(ComprehensibilityLabError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "missing metric"


class UnsupportedMetric(ComprehensibilityLabError, ValueError):
    pass


class JoinError(ComprehensibilityLabError, KeyError):
    """Measured snippets without a feature row."""

    def __init__(self, snippet_ids: Sequence[str]):
        self.snippet_ids = sorted(snippet_ids)
        super().__init__(f"no feature row for snippet(s): {', '.join(self.snippet_ids)}")

    def __str__(self) -> str:
        return str(self.args[0])


class EmptyDataset(ComprehensibilityLabError, ValueError):
    pass


# learn


class EmptyTraining(ComprehensibilityLabError, ValueError):
    pass


class SingleClassTraining(ComprehensibilityLabError, ValueError):
    pass


class ArityMismatch(ComprehensibilityLabError, ValueError):
    pass


class VersionMismatch(ComprehensibilityLabError):
    def __init__(self, found: Optional[object], supported: int):
        self.found = found
        self.supported = supported
        super().__init__(f"model format version {found} is not supported (expected {supported})")


class CorruptModel(ComprehensibilityLabError):
    pass


class TooFewSamples(UserWarning):
    """A minority class holds a single sample, so SMOTE falls back to duplication."""


# evaluation


class TooFewPerClass(ComprehensibilityLabError, ValueError):
    def __init__(self, label: int, count: int, folds: int):
        self.label = label
        self.count = count
        self.folds = folds
        super().__init__(f"class {label} has {count} instance(s), fewer than {folds} folds")


class EmptyMatrix(ComprehensibilityLabError, ValueError):
    pass


class ZeroBaseline(ComprehensibilityLabError, ValueError):
    pass


class EmptySample(ComprehensibilityLabError, ValueError):
    pass


# cli


class ConfigError(ComprehensibilityLabError, ValueError):
    pass


class ModelMismatch(ComprehensibilityLabError):
    """The model was trained for another task or setting than the command needs."""
