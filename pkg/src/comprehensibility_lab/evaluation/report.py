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

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from comprehensibility_lab.dataset.distribution import ClassDistribution
from comprehensibility_lab.evaluation.baselines import BaselineReport
from comprehensibility_lab.evaluation.confusion import ConfusionMatrix
from comprehensibility_lab.evaluation.improvement import ImprovementReport
from comprehensibility_lab.evaluation.metrics import MetricReport
from comprehensibility_lab.utils.constants import VERSION
from comprehensibility_lab.utils.utils import format_epsilon

REPORT_KIND = "evaluation"
COMPARISON_KIND = "comparison"
RUN_KIND = "run"


def report_metadata() -> Dict[str, Any]:
    """The only part of a report that changes between identical runs."""
    return {"created_at": datetime.now(timezone.utc).isoformat(), "version": VERSION}


@dataclass
class ConfigurationResult:
    """One optimal configuration, trained and tested on every outer split."""

    grid_index: int
    hyperparams: Dict[str, Any]
    fraction: float
    selected_in_splits: List[int]
    confusion: Optional[ConfusionMatrix] = None
    metrics: Optional[MetricReport] = None
    improvement: Optional[ImprovementReport] = None
    outer_evaluations: int = 0
    failure: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        return self.failure is None and self.metrics is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "grid_index": self.grid_index,
            "hyperparams": self.hyperparams,
            "fraction": self.fraction,
            "selected_in_splits": self.selected_in_splits,
            "confusion": self.confusion.to_dict() if self.confusion else None,
            "metrics": self.metrics.to_dict() if self.metrics else None,
            "improvement": self.improvement.to_dict() if self.improvement else None,
            "outer_evaluations": self.outer_evaluations,
            "failure": self.failure,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ConfigurationResult":
        improvement = payload.get("improvement")
        return cls(
            grid_index=payload["grid_index"],
            hyperparams=payload["hyperparams"],
            fraction=payload["fraction"],
            selected_in_splits=list(payload["selected_in_splits"]),
            confusion=ConfusionMatrix.from_dict(payload["confusion"]) if payload.get("confusion") else None,
            metrics=MetricReport.from_dict(payload["metrics"]) if payload.get("metrics") else None,
            improvement=ImprovementReport(**improvement) if improvement else None,
            outer_evaluations=payload.get("outer_evaluations", 0),
            failure=payload.get("failure"),
        )


@dataclass
class EvaluationReport:
    task: str
    setting: str
    metric: str
    epsilon: Optional[float]
    family: str
    seed: int
    feature_fractions: List[float]
    grid_size: int
    class_distribution: ClassDistribution
    baseline: BaselineReport
    configurations: List[ConfigurationResult]
    failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=report_metadata)

    @property
    def successful(self) -> List[ConfigurationResult]:
        return [c for c in self.configurations if c.succeeded]

    @property
    def optimal_configurations(self) -> int:
        return len(self.configurations)

    @property
    def improvements(self) -> List[float]:
        return [c.improvement.ri for c in self.successful if c.improvement is not None]

    @property
    def averaged_wf1(self) -> Optional[float]:
        scores = [c.metrics.weighted_f1 for c in self.successful if c.metrics is not None]
        return sum(scores) / len(scores) if scores else None

    @property
    def averaged_ri(self) -> Optional[float]:
        improvements = self.improvements
        return sum(improvements) / len(improvements) if improvements else None

    @property
    def share_beating_baseline(self) -> Optional[float]:
        improvements = self.improvements
        return sum(1 for ri in improvements if ri > 0) / len(improvements) if improvements else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": REPORT_KIND,
            "task": self.task,
            "setting": self.setting,
            "metric": self.metric,
            "epsilon": self.epsilon,
            "family": self.family,
            "seed": self.seed,
            "feature_fractions": self.feature_fractions,
            "grid_size": self.grid_size,
            "class_distribution": self.class_distribution.to_dict(),
            "baseline": self.baseline.to_dict(),
            "configurations": [c.to_dict() for c in self.configurations],
            "optimal_configurations": self.optimal_configurations,
            "averaged_wf1": self.averaged_wf1,
            "averaged_ri": self.averaged_ri,
            "share_beating_baseline": self.share_beating_baseline,
            "failures": self.failures,
            "notes": self.notes,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "EvaluationReport":
        """
        Raises:
            ValueError: if the payload is not an evaluation report.
        """
        if payload.get("kind") != REPORT_KIND:
            raise ValueError(f"Not an evaluation report (kind={payload.get('kind')!r})")
        try:
            return cls(
                task=payload["task"],
                setting=payload["setting"],
                metric=payload["metric"],
                epsilon=payload["epsilon"],
                family=payload["family"],
                seed=payload["seed"],
                feature_fractions=list(payload["feature_fractions"]),
                grid_size=payload["grid_size"],
                class_distribution=ClassDistribution.from_dict(payload["class_distribution"]),
                baseline=BaselineReport.from_dict(payload["baseline"]),
                configurations=[ConfigurationResult.from_dict(c) for c in payload["configurations"]],
                failures=list(payload.get("failures", [])),
                notes=list(payload.get("notes", [])),
                metadata=dict(payload.get("metadata", {})),
            )
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed evaluation report: {e}") from e


@dataclass
class ComparisonReport:
    """RI of the absolute and relative models of one metric, and whether RC improves more."""

    setting: str
    metric: str
    epsilon: Optional[float]
    family: str
    ri_ac: List[float]
    ri_rc: List[float]
    u: float
    p_value: float
    method: str
    alpha: float = 0.05
    metadata: Dict[str, Any] = field(default_factory=report_metadata)

    @property
    def mean_ri_ac(self) -> float:
        return sum(self.ri_ac) / len(self.ri_ac)

    @property
    def mean_ri_rc(self) -> float:
        return sum(self.ri_rc) / len(self.ri_rc)

    @property
    def delta_ri(self) -> float:
        return self.mean_ri_rc - self.mean_ri_ac

    @property
    def significant(self) -> bool:
        return self.p_value < self.alpha

    @property
    def share_positive_ac(self) -> float:
        return sum(1 for ri in self.ri_ac if ri > 0) / len(self.ri_ac)

    @property
    def share_positive_rc(self) -> float:
        return sum(1 for ri in self.ri_rc if ri > 0) / len(self.ri_rc)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": COMPARISON_KIND,
            "setting": self.setting,
            "metric": self.metric,
            "epsilon": self.epsilon,
            "family": self.family,
            "ri_ac": self.ri_ac,
            "ri_rc": self.ri_rc,
            "mean_ri_ac": self.mean_ri_ac,
            "mean_ri_rc": self.mean_ri_rc,
            "delta_ri": self.delta_ri,
            "share_positive_ac": self.share_positive_ac,
            "share_positive_rc": self.share_positive_rc,
            "u": self.u,
            "p_value": self.p_value,
            "method": self.method,
            "alpha": self.alpha,
            "significant": self.significant,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ComparisonReport":
        if payload.get("kind") != COMPARISON_KIND:
            raise ValueError(f"Not a comparison report (kind={payload.get('kind')!r})")
        try:
            return cls(
                setting=payload["setting"],
                metric=payload["metric"],
                epsilon=payload["epsilon"],
                family=payload["family"],
                ri_ac=list(payload["ri_ac"]),
                ri_rc=list(payload["ri_rc"]),
                u=payload["u"],
                p_value=payload["p_value"],
                method=payload["method"],
                alpha=payload.get("alpha", 0.05),
                metadata=dict(payload.get("metadata", {})),
            )
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed comparison report: {e}") from e


@dataclass(frozen=True)
class ExperimentKey:
    """Which experiment a report belongs to; also names its files."""

    task: str
    setting: str
    metric: str
    epsilon: Optional[float] = None

    def stem(self, family: str) -> str:
        return f"{self.task}_{self.setting}_{self.metric}_eps{format_epsilon(self.epsilon)}_{family}"


def load_report_files(paths: Sequence[str]) -> Tuple[List[EvaluationReport], List[ComparisonReport]]:
    """
    Read evaluation and comparison reports from files or directories (searched recursively).

    Raises:
        ValueError: if nothing is found or a file is not a report.
    """
    files: List[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            files.extend(sorted(p for p in path.rglob("*.json") if p.parent.name != "models"))
        elif path.is_file():
            files.append(path)
        else:
            raise ValueError(f"No such report file or directory: {raw}")
    if not files:
        raise ValueError(f"No report files found in {', '.join(paths) or 'the given paths'}")

    evaluations, comparisons = [], []
    for file in files:
        try:
            payload = json.loads(file.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ValueError(f"Cannot read report {file}: {e}") from e
        if not isinstance(payload, dict):
            raise ValueError(f"Malformed report {file}: expected a JSON object")
        kind = payload.get("kind")
        if kind == REPORT_KIND:
            evaluations.append(EvaluationReport.from_dict(payload))
        elif kind == COMPARISON_KIND:
            comparisons.append(ComparisonReport.from_dict(payload))
        elif kind == RUN_KIND or (kind is None and "format_version" in payload):
            continue
        else:
            raise ValueError(f"Malformed report {file}: unknown kind {kind!r}")
    if not evaluations and not comparisons:
        raise ValueError("No evaluation or comparison reports found")
    return evaluations, comparisons
