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

import pytest

from comprehensibility_lab.dataset.distribution import ClassDistribution
from comprehensibility_lab.enums.baseline_kind import BaselineKind
from comprehensibility_lab.evaluation.baselines import (
    Baseline,
    BaselineReport,
    baseline_report,
    baseline_wf1,
    best_baseline,
    lazy_wf1,
    random_wf1,
)
from comprehensibility_lab.evaluation.improvement import (
    ImprovementReport,
    delta_ri,
    relative_improvement,
    share_positive,
)
from comprehensibility_lab.evaluation.reference import REFERENCE_CELLS, audit_reference_baselines
from comprehensibility_lab.exceptions import ZeroBaseline


class TestBaselineFormulas:
    # Lazy wF1 is 2p^2 / (1 + p)
    def test_lazy(self):
        assert lazy_wf1(0.74) == pytest.approx(2 * 0.74**2 / 1.74)
        assert lazy_wf1(1.0) == 1.0
        assert lazy_wf1(0.0) == 0.0

    # Random wF1 is the sum of squared frequencies
    def test_random(self):
        assert random_wf1({0: 0.5, 1: 0.5}) == pytest.approx(0.5)
        assert random_wf1(ClassDistribution({2: 13, 3: 44, 4: 43})) == pytest.approx(0.3954)

    # Frequencies that do not sum to one are rejected
    def test_bad_frequencies(self):
        with pytest.raises(ValueError, match="sum to"):
            random_wf1({0: 0.5, 1: 0.4})

    # A lazy baseline needs a label of the distribution
    def test_baseline_wf1(self):
        distribution = ClassDistribution({0: 3, 1: 1})
        assert baseline_wf1(distribution, BaselineKind.LAZY, 0) == pytest.approx(lazy_wf1(0.75))
        assert baseline_wf1(distribution, BaselineKind.RANDOM) == pytest.approx(0.625)
        with pytest.raises(ValueError, match="Lazy baseline needs"):
            baseline_wf1(distribution, BaselineKind.LAZY, 7)


class TestBestBaseline:
    # The published AU snippet-wise cell: the majority class wins
    def test_majority_wins(self):
        best = best_baseline(ClassDistribution({0: 37, 1: 13}))
        assert (best.kind, best.label, best.name) == (BaselineKind.LAZY, 0, "MB0")
        assert best.value == pytest.approx(0.629, abs=0.001)

    # Near-uniform distributions favor the random model
    def test_random_wins(self):
        best = best_baseline(ClassDistribution({0: 28, 1: 22}))
        assert best.name == "RB"
        assert best.value == pytest.approx(0.507, abs=0.001)

    # A lazy model tied with the random model keeps the spot
    def test_tie_prefers_lazy(self):
        best = best_baseline(ClassDistribution({1: 12}))
        assert (best.name, best.value) == ("MB1", 1.0)

    # The report lists every lazy value, the majority and the winner
    def test_report(self):
        report = baseline_report(ClassDistribution({0: 136, 1: 304}))
        assert sorted(report.lazy) == [0, 1]
        assert report.majority == pytest.approx(lazy_wf1(304 / 440))
        assert report.best.name == "RB"
        assert report.best.value == pytest.approx(0.573, abs=0.001)
        payload = report.to_dict()
        assert payload["best"]["name"] == "RB"
        assert BaselineReport.from_dict(payload) == report

    # Baseline names
    def test_names(self):
        assert Baseline(BaselineKind.LAZY, 2, 0.1).name == "MB2"
        assert Baseline(BaselineKind.RANDOM, None, 0.1).name == "RB"


class TestReferenceAudit:
    # Every published baseline value is reproduced from its class counts
    def test_values_reproduced(self):
        checks = audit_reference_baselines()
        assert len(checks) == len(REFERENCE_CELLS) == 15
        assert all(check.value_matches for check in checks)

    # Only two published cells name a lazy model where the random model is stronger
    def test_kind_mismatches(self):
        mismatched = [
            (check.cell.task, check.cell.setting, check.cell.metric)
            for check in audit_reference_baselines()
            if not check.kind_matches
        ]
        assert mismatched == [("RC", "snippet-wise", "ABU"), ("RC", "snippet-wise", "BD50")]

    # Audit rows carry both the published and the recomputed cell
    def test_to_dict(self):
        row = audit_reference_baselines()[0].to_dict()
        assert row["published"] == "MB0 0.629"
        assert row["recomputed"].startswith("MB0 0.62")
        assert row["value_matches"] is True


class TestImprovement:
    # A wF1 of 0.677 over a 0.507 baseline is a third better
    def test_relative_improvement(self):
        assert relative_improvement(0.677, 0.507) == pytest.approx(0.334, abs=0.0015)
        assert relative_improvement(0.4, 0.5) == pytest.approx(-0.2)

    # Only positive baselines are allowed
    @pytest.mark.parametrize("baseline", [0.0, -0.1])
    def test_zero_baseline(self, baseline):
        with pytest.raises(ZeroBaseline):
            relative_improvement(0.5, baseline)

    # Delta RI is the relative minus the absolute improvement
    def test_delta_ri(self):
        assert delta_ri(0.602, -0.284) == pytest.approx(0.886)

    # Share of models beating their baseline
    def test_share_positive(self):
        assert share_positive([0.1, -0.2, 0.0, 0.3]) == 0.5
        assert share_positive([]) == 0.0

    # The report keeps its inputs
    def test_report(self):
        report = ImprovementReport.of(0.6, 0.5)
        assert report.to_dict() == {"model_value": 0.6, "baseline_value": 0.5, "ri": pytest.approx(0.2)}
