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

import itertools
import json

import numpy as np
import pytest

from comprehensibility_lab.dataset.builder import (
    LabeledInstance,
    build_ac_dataset,
    build_dataset,
    build_rc_dataset,
    conflicting_groups,
    count_rc_labels,
    instance_feature_names,
    iter_rc_instances,
    key_names,
    summarize_distributions,
    to_arrays,
)
from comprehensibility_lab.dataset.distribution import ClassDistribution, class_distribution
from comprehensibility_lab.dataset.io import INSTANCES_FILE, MANIFEST_FILE, write_dataset
from comprehensibility_lab.dataset.labels import RcConfig
from comprehensibility_lab.enums.metric import Metric
from comprehensibility_lab.enums.setting import Setting
from comprehensibility_lab.enums.task import Task
from comprehensibility_lab.exceptions import EmptyDataset, JoinError, UnsupportedMetric
from comprehensibility_lab.utils.constants import EPSILON_LADDER

from conftest import DS1_AU_SNIPPET_WISE, DS1_AU_TIES, DS2_PARTICIPANTS, DS2_SNIPPETS


class TestAcDataset:
    # Snippet-wise AU reproduces the planted two-class split
    def test_snippet_wise_au(self, ds1, ds1_features):
        instances, distribution = build_ac_dataset(ds1_features, ds1, Metric.AU, Setting.SNIPPET_WISE)
        assert len(instances) == 50
        assert distribution.counts == DS1_AU_SNIPPET_WISE
        assert [i.keys for i in instances] == sorted(i.keys for i in instances)
        assert all(i.features.shape == (84,) for i in instances)
        np.testing.assert_array_equal(instances[0].features, ds1_features.row(instances[0].keys[0]))

    # Developer-wise PBU keeps one instance per record with developer features appended
    def test_developer_wise_pbu(self, ds1, ds1_features):
        instances, distribution = build_ac_dataset(ds1_features, ds1, Metric.PBU, Setting.DEVELOPER_WISE)
        assert len(instances) == 440
        assert distribution.counts == {0: 136, 1: 304}
        assert instances[0].features.shape == (86,)
        assert len(instances[0].keys) == 2

    # Snippet-wise PBU is not a valid experiment
    def test_excluded_metric(self, ds1, ds1_features):
        with pytest.raises(UnsupportedMetric):
            build_ac_dataset(ds1_features, ds1, Metric.PBU, Setting.SNIPPET_WISE)

    # Measured snippets must have feature rows
    def test_join_error(self, ds1, make_feature_table, ds1_snippet_ids):
        features = make_feature_table(ds1_snippet_ids[1:])
        with pytest.raises(JoinError, match=ds1_snippet_ids[0]):
            build_ac_dataset(features, ds1, Metric.AU, Setting.SNIPPET_WISE)

    # No record carrying the metric means an empty dataset
    def test_empty(self, ds2, make_feature_table):
        features = make_feature_table(sorted({r.snippet_id for r in ds2}))
        with pytest.raises(EmptyDataset):
            build_ac_dataset(features, ds2, Metric.AU, Setting.DEVELOPER_WISE)

    # Epsilon only applies to pairs
    def test_epsilon_rejected(self, ds1, ds1_features):
        with pytest.raises(ValueError, match="epsilon"):
            build_dataset(ds1_features, ds1, Task.AC, Metric.AU, Setting.SNIPPET_WISE, RcConfig(epsilon=0.11))


class TestRcDataset:
    # n squared ordered pairs, n self pairs labeled 2, balanced 0/1
    def test_snippet_wise_combinatorics(self, ds1, ds1_features):
        instances, distribution = build_rc_dataset(ds1_features, ds1, Metric.AU, Setting.SNIPPET_WISE)
        assert len(instances) == 2500
        assert distribution.counts[2] == DS1_AU_TIES
        assert distribution.counts[0] == distribution.counts[1] == (2500 - DS1_AU_TIES) // 2
        self_pairs = [i for i in instances if i.keys[0] == i.keys[1]]
        assert len(self_pairs) == 50
        assert all(i.label == 2 for i in self_pairs)

    # Pair features are the two snippets' vectors concatenated
    def test_pair_features(self, ds1, ds1_features):
        instance = next(itertools.islice(iter_rc_instances(ds1_features, ds1, Metric.AU, Setting.SNIPPET_WISE), 7, None))
        first, second = instance.keys
        assert instance.features.shape == (168,)
        np.testing.assert_array_equal(instance.features[:84], ds1_features.row(first))
        np.testing.assert_array_equal(instance.features[84:], ds1_features.row(second))

    # Pairs are streamed in lexicographic key order
    def test_key_order(self, ds1, ds1_features):
        keys = [i.keys for i in iter_rc_instances(ds1_features, ds1, Metric.RL, Setting.SNIPPET_WISE)]
        assert keys == sorted(keys)

    # Self pairs can be left out
    def test_exclude_self_pairs(self, ds1):
        counts = count_rc_labels(ds1, Metric.AU, Setting.SNIPPET_WISE, RcConfig(include_self_pairs=False))
        assert sum(counts.values()) == 2450
        assert counts[2] == DS1_AU_TIES - 50

    # The equality share never shrinks as epsilon grows
    @pytest.mark.parametrize("metric", list(Metric))
    def test_epsilon_monotone(self, ds1, metric):
        shares = []
        for epsilon in EPSILON_LADDER:
            counts = count_rc_labels(ds1, metric, Setting.SNIPPET_WISE, RcConfig(epsilon=epsilon))
            shares.append(counts[2] / sum(counts.values()))
            assert counts[0] == counts[1]
        assert shares == sorted(shares)

    # Developer-wise instances carry the participant and its developer features
    def test_developer_wise(self, ds1, ds1_features):
        instance = next(iter_rc_instances(ds1_features, ds1, Metric.AU, Setting.DEVELOPER_WISE))
        assert len(instance.keys) == 3
        assert instance.features.shape == (170,)

    # 121 participants who all judged 100 snippets give 1.21M developer-wise pairs
    def test_developer_wise_count_is_streamed(self, ds2):
        counts = count_rc_labels(ds2, Metric.RL, Setting.DEVELOPER_WISE)
        assert sum(counts.values()) == DS2_PARTICIPANTS * DS2_SNIPPETS**2 == 1_210_000
        assert counts[0] == counts[1]
        assert counts[2] >= DS2_PARTICIPANTS * DS2_SNIPPETS

    # Snippet-wise pairs of the DS2 shape
    def test_snippet_wise_count_ds2(self, ds2):
        assert sum(count_rc_labels(ds2, Metric.RL, Setting.SNIPPET_WISE).values()) == 10_000


class TestHelpers:
    # Key and feature column names per task and setting
    def test_names(self):
        assert key_names(Task.AC, Setting.SNIPPET_WISE) == ["snippet_id"]
        assert key_names(Task.RC, Setting.DEVELOPER_WISE) == ["snippet_id_1", "snippet_id_2", "participant_id"]
        names = instance_feature_names(Task.RC, ["experience"])
        assert len(names) == 169
        assert names[0] == "first_cyclomatic_complexity"
        assert names[84] == "second_cyclomatic_complexity"
        assert names[-1] == "dev_experience"

    # Identical vectors with different labels are reported as conflicts
    def test_conflicting_groups(self):
        a, b = np.zeros(3), np.ones(3)
        instances = [
            LabeledInstance(features=a, label=0, keys=("1",)),
            LabeledInstance(features=a.copy(), label=1, keys=("2",)),
            LabeledInstance(features=a.copy(), label=1, keys=("3",)),
            LabeledInstance(features=b, label=1, keys=("4",)),
            LabeledInstance(features=b.copy(), label=1, keys=("5",)),
        ]
        report = conflicting_groups(instances)
        assert report.to_dict() == {"groups": 2, "conflicting_groups": 1, "conflicting_instances": 3}

    # Arrays stack features and labels
    def test_to_arrays(self):
        X, y = to_arrays([LabeledInstance(features=np.arange(2.0), label=1, keys=("a",))])
        assert X.shape == (1, 2)
        assert y.tolist() == [1]
        X, y = to_arrays([])
        assert X.shape == (0, 0) and len(y) == 0

    # Ingest-time distribution tables for both settings
    def test_summarize_distributions(self, ds1):
        summary = summarize_distributions(ds1)
        assert summary["AU"]["snippet-wise"].counts == DS1_AU_SNIPPET_WISE
        assert summary["PBU"]["snippet-wise"] is None
        assert summary["PBU"]["developer-wise"].counts == {0: 136, 1: 304}
        assert summary["RL"]["developer-wise"].total == 440


class TestClassDistribution:
    # Frequencies derive from exact counts
    def test_frequencies(self):
        distribution = class_distribution([0, 0, 1, 2])
        assert distribution.frequencies == {0: 0.5, 1: 0.25, 2: 0.25}
        assert sum(distribution.frequencies.values()) == pytest.approx(1.0, abs=1e-9)
        assert distribution.share(3) == 0.0
        assert ClassDistribution.from_dict(distribution.to_dict()) == distribution

    # Nothing to count is an error
    def test_empty(self):
        with pytest.raises(EmptyDataset):
            class_distribution([])
        with pytest.raises(EmptyDataset):
            ClassDistribution({})


class TestWriteDataset:
    # instances.csv has keys, features and label; the manifest records counts
    def test_write(self, tmp_path, ds1, ds1_features):
        instances, distribution = build_ac_dataset(ds1_features, ds1, Metric.AU, Setting.SNIPPET_WISE)
        written = write_dataset(
            str(tmp_path),
            instances,
            distribution,
            key_names(Task.AC, Setting.SNIPPET_WISE),
            instance_feature_names(Task.AC),
            {"task": "AC"},
            conflicting_groups(instances),
        )
        assert [p.rsplit("/", 1)[-1] for p in written] == [INSTANCES_FILE, MANIFEST_FILE]
        lines = (tmp_path / INSTANCES_FILE).read_text().splitlines()
        assert lines[0].startswith("snippet_id,cyclomatic_complexity,")
        assert lines[0].endswith(",label")
        assert len(lines) == 51
        manifest = json.loads((tmp_path / MANIFEST_FILE).read_text())
        assert manifest["task"] == "AC"
        assert manifest["instance_count"] == 50
        assert manifest["class_distribution"]["counts"] == {"0": 37, "1": 13}
