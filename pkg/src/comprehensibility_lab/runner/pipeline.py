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
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from comprehensibility_lab.dataset.builder import build_dataset, instance_feature_names, to_arrays
from comprehensibility_lab.dataset.derived import carries
from comprehensibility_lab.dataset.labels import SNIPPET_WISE_AC_EXCLUDED, RcConfig
from comprehensibility_lab.dataset.measurements import (
    MeasurementRecord,
    developer_feature_names,
    ingest_measurements,
)
from comprehensibility_lab.enums.metric import Metric
from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.enums.setting import Setting
from comprehensibility_lab.enums.task import Task
from comprehensibility_lab.evaluation.nested_cv import nested_cv
from comprehensibility_lab.evaluation.report import (
    RUN_KIND,
    ComparisonReport,
    EvaluationReport,
    ExperimentKey,
    report_metadata,
)
from comprehensibility_lab.evaluation.significance import B_GREATER, mann_whitney_u
from comprehensibility_lab.exceptions import ComprehensibilityLabError, EmptyDataset, MissingMetric
from comprehensibility_lab.extract.corpus import FeatureTable, SkipRecord, extract_corpus, load_snippets
from comprehensibility_lab.learn.serialization import save_model
from comprehensibility_lab.learn.training import fit
from comprehensibility_lab.runner.run_config import RunConfig
from comprehensibility_lab.utils.constants import (
    EXIT_ALL_FAILED,
    EXIT_OK,
    SNIPPET_WISE_AC_EXCLUDED_REASON,
)
from comprehensibility_lab.utils.utils import atomic_write_json, atomic_write_text, derive_seed, format_epsilon

logger = logging.getLogger(__name__)

REPORTS_DIR = "reports"
COMPARISONS_DIR = "comparisons"
MODELS_DIR = "models"
FEATURES_FILE = "features.csv"
RUN_FILE = "run.json"

OK = "ok"
FAILED = "failed"
REJECTED = "rejected"

DEVELOPER_WISE_NOTE = (
    "developer-wise folds are stratified at random without grouping by participant or snippet; "
    "rows of one participant or snippet can fall on both sides of a split"
)

# stage tag of the seed used to refit the best configuration on all instances
_FINAL_FIT_STAGE = 40


@dataclass
class RunEntry:
    task: str
    setting: str
    metric: str
    epsilon: Optional[float]
    family: Optional[str]
    status: str
    reason: Optional[str] = None
    report: Optional[str] = None
    model: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class PipelineResult:
    entries: List[RunEntry] = field(default_factory=list)
    written: List[str] = field(default_factory=list)
    skipped: List[SkipRecord] = field(default_factory=list)
    reports: List[EvaluationReport] = field(default_factory=list)
    comparisons: List[ComparisonReport] = field(default_factory=list)

    @property
    def succeeded(self) -> int:
        return sum(1 for entry in self.entries if entry.status == OK)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.succeeded else EXIT_ALL_FAILED


class Pipeline:
    """
    Runs every configured experiment end to end:
    - check that the inputs exist
    - load the feature table, or extract it from the snippets
    - ingest the measurements
    - for each (task, metric, epsilon): build the dataset, then per model family
      run nested cross-validation, write the report and the refitted best model
    - pair AC and RC reports of the same metric into comparison reports
    - write a run summary
    Configurations that cannot run are recorded and skipped; files are written atomically.
    """

    def __init__(self, config: RunConfig, threads: Optional[int] = None):
        self.config = config
        self.threads = threads

    def check_inputs(self) -> None:
        if self.config.measurements is None:
            raise FileNotFoundError("No measurements file configured")
        if not os.path.isfile(self.config.measurements):
            raise FileNotFoundError(f"The file {self.config.measurements} does not exist.")
        if self.config.features is not None:
            if not os.path.isfile(self.config.features):
                raise FileNotFoundError(f"The file {self.config.features} does not exist.")
        elif self.config.snippets is None:
            raise FileNotFoundError("Neither a feature table nor snippets are configured")
        elif not os.path.exists(self.config.snippets):
            raise FileNotFoundError(f"The path {self.config.snippets} does not exist.")

    def load_features(self, result: PipelineResult) -> FeatureTable:
        if self.config.features is not None:
            return FeatureTable.from_csv(self.config.features)
        table = extract_corpus(load_snippets(self.config.snippets), strict=self.config.strict, threads=self.threads)
        path = os.path.join(self.config.output, FEATURES_FILE)
        atomic_write_text(path, table.to_csv())
        result.written.append(path)
        result.skipped.extend(table.skipped)
        return table

    def load_measurements(self) -> List[MeasurementRecord]:
        return ingest_measurements(self.config.measurements)

    def experiments(self) -> List[ExperimentKey]:
        keys = []
        for metric in self.config.metrics:
            for task in self.config.tasks:
                epsilons: Sequence[Optional[float]] = self.config.epsilons if task is Task.RC else [None]
                for epsilon in epsilons:
                    keys.append(ExperimentKey(task.value, self.config.setting.value, metric.value, epsilon))
        return keys

    def _write(self, directory: str, stem: str, payload: Dict[str, Any], result: PipelineResult) -> str:
        path = os.path.join(self.config.output, directory, f"{stem}.json")
        atomic_write_json(path, payload)
        result.written.append(path)
        return path

    def _entry(self, key: ExperimentKey, family: Optional[ModelFamily], status: str, **kwargs: Any) -> RunEntry:
        return RunEntry(
            task=key.task,
            setting=key.setting,
            metric=key.metric,
            epsilon=key.epsilon,
            family=family.value if family else None,
            status=status,
            **kwargs,
        )

    def _reject(self, key: ExperimentKey, reason: str, result: PipelineResult) -> None:
        logger.warning(f"Rejecting {key.task} {key.setting} {key.metric}: {reason}")
        for family in self.config.families:
            result.entries.append(self._entry(key, family, REJECTED, reason=reason))

    def evaluate(
        self, key: ExperimentKey, features: FeatureTable, records: Sequence[MeasurementRecord], result: PipelineResult
    ) -> None:
        task, metric, setting = Task(key.task), Metric(key.metric), Setting(key.setting)
        if task is Task.AC and setting is Setting.SNIPPET_WISE and metric in SNIPPET_WISE_AC_EXCLUDED:
            self._reject(key, f"{metric.value}: {SNIPPET_WISE_AC_EXCLUDED_REASON}", result)
            return

        rc_config = RcConfig(key.epsilon or 0.0, self.config.include_self_pairs) if task is Task.RC else None
        try:
            instances, _ = build_dataset(features, records, task, metric, setting, rc_config)
        except (EmptyDataset, MissingMetric) as e:
            self._reject(key, f"no dataset for {metric.value}: {e}", result)
            return

        developer_names = (
            developer_feature_names([r for r in records if carries(r, metric)])
            if setting is Setting.DEVELOPER_WISE
            else []
        )
        names = instance_feature_names(task, developer_names)
        always_keep = tuple(range(len(names) - len(developer_names), len(names)))
        X, y = to_arrays(instances)

        for family in self.config.families:
            stem = key.stem(family.value)
            spec = self.config.spec(family)
            logger.info(f"Evaluating {stem} on {len(y)} instance(s)")
            try:
                report = nested_cv(
                    X,
                    y,
                    spec,
                    fractions=self.config.feature_fractions,
                    seed=self.config.seed,
                    key=key,
                    feature_names=names,
                    always_keep=always_keep,
                    threads=self.threads,
                )
            except (ComprehensibilityLabError, ValueError) as e:
                logger.warning(f"Configuration {stem} failed: {e}")
                result.entries.append(self._entry(key, family, FAILED, reason=str(e)))
                continue

            if setting is Setting.DEVELOPER_WISE:
                report.notes.append(DEVELOPER_WISE_NOTE)
            report_path = self._write(REPORTS_DIR, stem, report.to_dict(), result)
            result.reports.append(report)
            if not report.successful:
                reason = report.failures[0] if report.failures else "no configuration succeeded"
                result.entries.append(self._entry(key, family, FAILED, reason=reason, report=report_path))
                continue

            model_path = self._refit_best(key, family, report, X, y, names, always_keep, result)
            result.entries.append(self._entry(key, family, OK, report=report_path, model=model_path))

    def _refit_best(self, key, family, report, X, y, names, always_keep, result) -> Optional[str]:
        best = max(report.successful, key=lambda c: c.metrics.weighted_f1)
        try:
            model = fit(
                self.config.spec(family),
                best.hyperparams,
                X,
                y,
                fraction=best.fraction,
                feature_names=names,
                always_keep=always_keep,
                seed=derive_seed(self.config.seed, _FINAL_FIT_STAGE, best.grid_index),
            )
        except (ComprehensibilityLabError, ValueError) as e:
            logger.warning(f"Refitting the best {family.value} configuration failed: {e}")
            return None
        model.metadata.update(
            {"task": key.task, "setting": key.setting, "metric": key.metric, "epsilon": key.epsilon}
        )
        path = os.path.join(self.config.output, MODELS_DIR, f"{key.stem(family.value)}.json")
        save_model(model, path)
        result.written.append(path)
        return path

    def compare(self, result: PipelineResult) -> None:
        """Pair each successful AC report with the RC reports of the same metric and family."""
        absolute: Dict[Tuple[str, str, str], EvaluationReport] = {}
        relative: Dict[Tuple[str, str, str], List[EvaluationReport]] = defaultdict(list)
        for report in result.reports:
            if not report.improvements:
                continue
            group = (report.setting, report.metric, report.family)
            if report.task == Task.AC.value:
                absolute[group] = report
            else:
                relative[group].append(report)

        for group, ac_report in sorted(absolute.items()):
            for rc_report in relative.get(group, []):
                test = mann_whitney_u(ac_report.improvements, rc_report.improvements, B_GREATER)
                comparison = ComparisonReport(
                    setting=rc_report.setting,
                    metric=rc_report.metric,
                    epsilon=rc_report.epsilon,
                    family=rc_report.family,
                    ri_ac=ac_report.improvements,
                    ri_rc=rc_report.improvements,
                    u=test.u,
                    p_value=test.p_value,
                    method=test.method,
                )
                stem = f"{comparison.setting}_{comparison.metric}_eps{format_epsilon(comparison.epsilon)}_{comparison.family}"
                self._write(COMPARISONS_DIR, stem, comparison.to_dict(), result)
                result.comparisons.append(comparison)

    def run(self) -> PipelineResult:
        """
        Raises:
            FileNotFoundError: if an input is missing.
            CorpusError: in strict mode, if a snippet does not parse.
            SchemaError, MeasurementValueError: for an invalid measurements file.
            JoinError: if a measured snippet has no feature row.
        """
        self.check_inputs()
        result = PipelineResult()
        features = self.load_features(result)
        records = self.load_measurements()
        for key in self.experiments():
            self.evaluate(key, features, records, result)
        self.compare(result)

        summary = {
            "kind": RUN_KIND,
            "entries": [entry.to_dict() for entry in result.entries],
            "skipped": [asdict(record) for record in result.skipped],
            "metadata": report_metadata(),
        }
        path = os.path.join(self.config.output, RUN_FILE)
        atomic_write_json(path, summary)
        result.written.append(path)
        return result
