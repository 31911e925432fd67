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
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from comprehensibility_lab.dataset.derived import carries, metric_value
from comprehensibility_lab.dataset.distribution import ClassDistribution, class_distribution
from comprehensibility_lab.dataset.labels import (
    SNIPPET_WISE_AC_EXCLUDED,
    RcConfig,
    ac_label,
    aggregate_snippet,
    check_ac_supported,
    rc_label,
)
from comprehensibility_lab.dataset.measurements import MeasurementRecord, developer_feature_names
from comprehensibility_lab.enums.metric import Metric
from comprehensibility_lab.enums.setting import Setting
from comprehensibility_lab.enums.task import Task
from comprehensibility_lab.exceptions import JoinError
from comprehensibility_lab.extract.catalog import FEATURE_NAMES
from comprehensibility_lab.extract.corpus import FeatureTable

logger = logging.getLogger(__name__)

Keys = Tuple[str, ...]


@dataclass(frozen=True, eq=False)
class LabeledInstance:
    features: np.ndarray
    label: int
    keys: Keys


@dataclass(frozen=True)
class ConflictReport:
    """Groups of instances sharing one feature vector, and how many of them disagree on the label."""

    groups: int
    conflicting_groups: int
    conflicting_instances: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "groups": self.groups,
            "conflicting_groups": self.conflicting_groups,
            "conflicting_instances": self.conflicting_instances,
        }


def key_names(task: Task, setting: Setting) -> List[str]:
    if task is Task.AC:
        names = ["snippet_id"]
    else:
        names = ["snippet_id_1", "snippet_id_2"]
    if setting is Setting.DEVELOPER_WISE:
        names.append("participant_id")
    return names


def instance_feature_names(task: Task, developer_features: Sequence[str] = ()) -> List[str]:
    """Column names of an instance's feature vector, code features first."""
    if task is Task.AC:
        names = list(FEATURE_NAMES)
    else:
        names = [f"first_{n}" for n in FEATURE_NAMES] + [f"second_{n}" for n in FEATURE_NAMES]
    return names + [f"dev_{name}" for name in developer_features]


def _carrying(records: Sequence[MeasurementRecord], metric: Metric) -> List[MeasurementRecord]:
    return [record for record in records if carries(record, metric)]


def _check_join(features: FeatureTable, snippet_ids) -> Dict[str, int]:
    index = features.index
    missing = [snippet_id for snippet_id in set(snippet_ids) if snippet_id not in index]
    if missing:
        raise JoinError(missing)
    return index


def _group_by_snippet(records: Sequence[MeasurementRecord]) -> Dict[str, List[MeasurementRecord]]:
    grouped: Dict[str, List[MeasurementRecord]] = defaultdict(list)
    for record in records:
        grouped[record.snippet_id].append(record)
    return dict(grouped)


def _developer_vector(record: MeasurementRecord, names: Sequence[str]) -> np.ndarray:
    return np.array([record.developer_features.get(name, 0.0) for name in names], dtype=float)


def ac_labels(
    records: Sequence[MeasurementRecord], metric: Metric, setting: Setting
) -> List[Tuple[Keys, int]]:
    """(keys, label) pairs of an AC dataset in lexicographic key order, without features."""
    check_ac_supported(metric, setting)
    carrying = _carrying(records, metric)
    if setting is Setting.SNIPPET_WISE:
        grouped = _group_by_snippet(carrying)
        return [
            ((snippet_id,), ac_label(aggregate_snippet(grouped[snippet_id], metric), metric, setting))
            for snippet_id in sorted(grouped)
        ]
    labeled = [
        ((record.snippet_id, record.participant_id), ac_label(metric_value(record, metric), metric, setting))
        for record in carrying
    ]
    return sorted(labeled, key=lambda item: item[0])


def build_ac_dataset(
    features: FeatureTable,
    records: Sequence[MeasurementRecord],
    metric: Metric,
    setting: Setting,
) -> Tuple[List[LabeledInstance], ClassDistribution]:
    """
    Build an absolute-comprehensibility dataset.

    Snippet-wise: one instance per measured snippet with its code features.
    Developer-wise: one instance per record with code and developer features concatenated.

    Raises:
        UnsupportedMetric: for snippet-wise PBU, ABU and BD50.
        JoinError: if a measured snippet has no feature row.
        EmptyDataset: if no record carries the metric.
    """
    labeled = ac_labels(records, metric, setting)
    index = _check_join(features, (keys[0] for keys, _ in labeled))

    if setting is Setting.SNIPPET_WISE:
        instances = [
            LabeledInstance(features=features.values[index[keys[0]]].copy(), label=label, keys=keys)
            for keys, label in labeled
        ]
    else:
        carrying = _carrying(records, metric)
        names = developer_feature_names(carrying)
        by_key = {(r.snippet_id, r.participant_id): r for r in carrying}
        instances = [
            LabeledInstance(
                features=np.concatenate(
                    [features.values[index[keys[0]]], _developer_vector(by_key[keys], names)]
                ),
                label=label,
                keys=keys,
            )
            for keys, label in labeled
        ]
    return instances, class_distribution(instances)


class _RcSource:
    """Scores and developer vectors needed to label and featurise RC pairs."""

    def __init__(self, records: Sequence[MeasurementRecord], metric: Metric, setting: Setting):
        self.metric = metric
        self.setting = setting
        carrying = _carrying(records, metric)
        grouped = _group_by_snippet(carrying)
        self.snippet_ids = sorted(grouped)
        self.developer_names = developer_feature_names(carrying) if setting is Setting.DEVELOPER_WISE else []
        self.scores: Dict[str, float] = {}
        self.judgments: Dict[str, Dict[str, int]] = {}
        self.developers: Dict[str, np.ndarray] = {}

        if setting is Setting.SNIPPET_WISE:
            self.scores = {sid: aggregate_snippet(grouped[sid], metric).score for sid in self.snippet_ids}
            return

        for snippet_id in self.snippet_ids:
            judged: Dict[str, int] = {}
            for record in grouped[snippet_id]:
                if record.participant_id in judged:
                    raise ValueError(
                        f"Participant {record.participant_id} judged snippet {snippet_id} more than once"
                    )
                judged[record.participant_id] = metric_value(record, metric)
                if record.participant_id not in self.developers:
                    self.developers[record.participant_id] = _developer_vector(record, self.developer_names)
            self.judgments[snippet_id] = judged

    def labels(self, config: RcConfig) -> Iterator[Tuple[Keys, int]]:
        for first in self.snippet_ids:
            for second in self.snippet_ids:
                if first == second and not config.include_self_pairs:
                    continue
                if self.setting is Setting.SNIPPET_WISE:
                    yield (first, second), rc_label(
                        self.scores[first], self.scores[second], self.metric, config.epsilon
                    )
                    continue
                first_judged = self.judgments[first]
                second_judged = self.judgments[second]
                for participant in sorted(first_judged.keys() & second_judged.keys()):
                    yield (first, second, participant), rc_label(
                        first_judged[participant], second_judged[participant], self.metric, config.epsilon
                    )


def iter_rc_instances(
    features: FeatureTable,
    records: Sequence[MeasurementRecord],
    metric: Metric,
    setting: Setting,
    config: Optional[RcConfig] = None,
) -> Iterator[LabeledInstance]:
    """
    Stream relative-comprehensibility instances in lexicographic key order.

    Snippet-wise: every ordered pair of measured snippets, labeled from aggregated scores.
    Developer-wise: for each ordered pair, every participant who judged both,
    labeled from that participant's raw values; developer features are appended.
    """
    config = config or RcConfig()
    source = _RcSource(records, metric, setting)
    index = _check_join(features, source.snippet_ids)
    for keys, label in source.labels(config):
        parts = [features.values[index[keys[0]]], features.values[index[keys[1]]]]
        if setting is Setting.DEVELOPER_WISE:
            parts.append(source.developers[keys[2]])
        yield LabeledInstance(features=np.concatenate(parts), label=label, keys=keys)


def count_rc_labels(
    records: Sequence[MeasurementRecord],
    metric: Metric,
    setting: Setting,
    config: Optional[RcConfig] = None,
) -> Counter:
    """Label counts of an RC dataset without materialising any feature vector."""
    return Counter(label for _, label in _RcSource(records, metric, setting).labels(config or RcConfig()))


def build_rc_dataset(
    features: FeatureTable,
    records: Sequence[MeasurementRecord],
    metric: Metric,
    setting: Setting,
    config: Optional[RcConfig] = None,
) -> Tuple[List[LabeledInstance], ClassDistribution]:
    instances = list(iter_rc_instances(features, records, metric, setting, config))
    return instances, class_distribution(instances)


def build_dataset(
    features: FeatureTable,
    records: Sequence[MeasurementRecord],
    task: Task,
    metric: Metric,
    setting: Setting,
    config: Optional[RcConfig] = None,
) -> Tuple[List[LabeledInstance], ClassDistribution]:
    if task is Task.AC:
        if config is not None and config.epsilon != 0:
            raise ValueError("epsilon only applies to relative comprehensibility")
        return build_ac_dataset(features, records, metric, setting)
    return build_rc_dataset(features, records, metric, setting, config)


def to_arrays(instances: Sequence[LabeledInstance]) -> Tuple[np.ndarray, np.ndarray]:
    if not instances:
        return np.empty((0, 0)), np.empty(0, dtype=int)
    X = np.vstack([instance.features for instance in instances])
    y = np.array([instance.label for instance in instances], dtype=int)
    return X, y


def conflicting_groups(instances: Sequence[LabeledInstance]) -> ConflictReport:
    """Count groups of identical feature vectors and those carrying more than one label."""
    labels_by_vector: Dict[bytes, Counter] = defaultdict(Counter)
    for instance in instances:
        labels_by_vector[np.ascontiguousarray(instance.features).tobytes()][instance.label] += 1
    conflicting = [labels for labels in labels_by_vector.values() if len(labels) > 1]
    return ConflictReport(
        groups=len(labels_by_vector),
        conflicting_groups=len(conflicting),
        conflicting_instances=sum(sum(labels.values()) for labels in conflicting),
    )


def summarize_distributions(
    records: Sequence[MeasurementRecord],
) -> Dict[str, Dict[str, Optional[ClassDistribution]]]:
    """
    AC class distributions per metric for both settings; None where a metric
    is excluded or absent from the records.
    """
    summary: Dict[str, Dict[str, Optional[ClassDistribution]]] = {}
    for metric in Metric:
        per_setting: Dict[str, Optional[ClassDistribution]] = {}
        for setting in Setting:
            if setting is Setting.SNIPPET_WISE and metric in SNIPPET_WISE_AC_EXCLUDED:
                per_setting[setting.value] = None
                continue
            labels = [label for _, label in ac_labels(records, metric, setting)]
            per_setting[setting.value] = class_distribution(labels) if labels else None
        summary[metric.value] = per_setting
    return summary
