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
import yaml

from comprehensibility_lab.enums.metric import Metric
from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.enums.setting import Setting
from comprehensibility_lab.enums.task import Task
from comprehensibility_lab.exceptions import ConfigError
from comprehensibility_lab.runner.run_config import DEFAULT_OUTPUT, RunConfig, load_run_config, parse_list


def _write(tmp_path, data, name="run.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(data) if not isinstance(data, str) else data)
    return str(path)


class TestDefaults:
    # Without a file or flags every metric is evaluated relatively with a random forest
    def test_defaults(self):
        config = load_run_config()
        assert config.metrics == list(Metric)
        assert config.tasks == [Task.RC]
        assert config.families == [ModelFamily.RF]
        assert config.setting is Setting.SNIPPET_WISE
        assert config.epsilons == [0.0]
        assert config.feature_fractions == [1.0]
        assert config.seed == 42
        assert config.output == DEFAULT_OUTPUT
        assert config.strict and config.include_self_pairs

    # Each family gets its configured grid and the run seed
    def test_spec(self):
        config = RunConfig(seed=7, grids={ModelFamily.KNN: {"n_neighbors": [3]}})
        assert config.spec(ModelFamily.KNN).grid == {"n_neighbors": [3]}
        assert config.spec(ModelFamily.KNN).seed == 7
        assert config.spec(ModelFamily.NB).grid == {"var_smoothing": [1e-9, 1e-6]}


class TestRunFile:
    # YAML values are parsed into enums and numbers
    def test_yaml(self, tmp_path):
        path = _write(
            tmp_path,
            {
                "metrics": ["au", "BD50"],
                "tasks": ["AC", "RC"],
                "epsilons": [0, 0.1],
                "families": "NB",
                "setting": "developer-wise",
                "seed": "3",
                "feature_fractions": [0.5, 1],
                "grids": {"NB": {"var_smoothing": [1e-9]}},
                "include_self_pairs": False,
            },
        )
        config = load_run_config(path)
        assert config.metrics == [Metric.AU, Metric.BD50]
        assert config.tasks == [Task.AC, Task.RC]
        assert config.epsilons == [0.0, 0.1]
        assert config.families == [ModelFamily.NB]
        assert config.setting is Setting.DEVELOPER_WISE
        assert config.seed == 3
        assert config.feature_fractions == [0.5, 1.0]
        assert config.grids == {ModelFamily.NB: {"var_smoothing": [1e-9]}}
        assert config.include_self_pairs is False

    # JSON is a subset of YAML, so JSON run files load too
    def test_json(self, tmp_path):
        path = _write(tmp_path, '{"families": ["SVM", "LR"], "output": "out"}', name="run.json")
        config = load_run_config(path)
        assert config.families == [ModelFamily.SVM, ModelFamily.LR]
        assert config.output == "out"

    # Flags override the file; empty flags leave it alone
    def test_overrides(self, tmp_path):
        path = _write(tmp_path, {"families": ["NB"], "seed": 1, "metrics": ["AU"]})
        config = load_run_config(path, families=["RF"], seed="9", metrics=[], output=None)
        assert config.families == [ModelFamily.RF]
        assert config.seed == 9
        assert config.metrics == [Metric.AU]

    # An empty file means defaults
    def test_empty_file(self, tmp_path):
        assert load_run_config(_write(tmp_path, "")) == RunConfig()

    # Broken files are configuration errors
    @pytest.mark.parametrize(
        "content, message",
        [
            ("metrics: [AU\n", ""),
            ("- AU\n- RL\n", "must hold a mapping"),
            ("colour: blue\n", "Unknown configuration keys: colour"),
            ("metrics: [XYZ]\n", "XYZ"),
            ("strict: maybe\n", "strict must be true or false"),
            ("seed: many\n", "many"),
        ],
    )
    def test_invalid_files(self, tmp_path, content, message):
        with pytest.raises(ConfigError, match=message):
            load_run_config(_write(tmp_path, content))

    # A missing run file is reported by name
    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="does not exist"):
            load_run_config(str(tmp_path / "nope.yaml"))


class TestValidation:
    # Lists that must not be empty
    @pytest.mark.parametrize("name", ["metrics", "tasks", "families", "epsilons"])
    def test_empty_lists(self, name):
        with pytest.raises(ConfigError, match="At least one"):
            RunConfig(**{name: []})

    # Epsilon must be non-negative and needs the relative task
    def test_epsilon(self):
        with pytest.raises(ConfigError, match="non-negative"):
            RunConfig(epsilons=[-0.1])
        with pytest.raises(ConfigError, match="only applies to task RC"):
            RunConfig(tasks=[Task.AC], epsilons=[0.1])
        assert RunConfig(tasks=[Task.AC, Task.RC], epsilons=[0.1]).epsilons == [0.1]

    # Fractions must lie on the ladder and grids must fit their family
    def test_fractions_and_grids(self):
        with pytest.raises(ConfigError, match="not one of"):
            RunConfig(feature_fractions=[0.25])
        with pytest.raises(ConfigError, match="Invalid grid for RF"):
            RunConfig(grids={ModelFamily.RF: {"n_neighbors": [3]}})


class TestParseList:
    # Repeated flags and comma-separated values flatten into one list
    def test_flatten(self):
        assert parse_list(["AU, PBU", "RL", " ", ""]) == ["AU", "PBU", "RL"]
        assert parse_list(None) == []
