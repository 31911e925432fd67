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

import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, List, Optional, Sequence

import yaml

from comprehensibility_lab.enums.metric import Metric
from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.enums.setting import Setting
from comprehensibility_lab.enums.task import Task
from comprehensibility_lab.exceptions import ConfigError
from comprehensibility_lab.learn.preprocessing import check_fraction
from comprehensibility_lab.learn.training import ModelSpec
from comprehensibility_lab.utils.constants import DEFAULT_SEED

DEFAULT_OUTPUT = "complab-out"


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one pipeline run needs. Built from defaults, then a run file,
    then command-line flags; later sources win.
    """

    snippets: Optional[str] = None
    features: Optional[str] = None
    measurements: Optional[str] = None
    output: str = DEFAULT_OUTPUT
    metrics: List[Metric] = field(default_factory=lambda: list(Metric))
    setting: Setting = Setting.SNIPPET_WISE
    tasks: List[Task] = field(default_factory=lambda: [Task.RC])
    epsilons: List[float] = field(default_factory=lambda: [0.0])
    families: List[ModelFamily] = field(default_factory=lambda: [ModelFamily.RF])
    seed: int = DEFAULT_SEED
    feature_fractions: List[float] = field(default_factory=lambda: [1.0])
    strict: bool = True
    include_self_pairs: bool = True
    grids: Dict[ModelFamily, Dict[str, List[Any]]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.metrics:
            raise ConfigError("At least one metric is required")
        if not self.tasks:
            raise ConfigError("At least one task is required")
        if not self.families:
            raise ConfigError("At least one model family is required")
        if not self.epsilons:
            raise ConfigError("At least one epsilon is required")
        for epsilon in self.epsilons:
            if epsilon < 0:
                raise ConfigError(f"epsilon must be non-negative, got {epsilon}")
            if epsilon != 0 and Task.RC not in self.tasks:
                raise ConfigError(f"epsilon {epsilon} only applies to task RC")
        for fraction in self.feature_fractions:
            try:
                check_fraction(fraction)
            except ValueError as e:
                raise ConfigError(str(e))
        for family, grid in self.grids.items():
            try:
                ModelSpec(family, grid, self.seed)
            except ValueError as e:
                raise ConfigError(f"Invalid grid for {family.value}: {e}")

    def spec(self, family: ModelFamily) -> ModelSpec:
        return ModelSpec(family, self.grids.get(family, {}), self.seed)

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Replace every field given a value other than None or an empty list."""
        given = {name: value for name, value in overrides.items() if value is not None and value != []}
        return replace(self, **_coerce(given)) if given else self


def _as_list(value: Any) -> List[Any]:
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def _coerce(raw: Dict[str, Any]) -> Dict[str, Any]:
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}")
    values = dict(raw)
    try:
        if "metrics" in values:
            values["metrics"] = [m if isinstance(m, Metric) else Metric.parse(str(m)) for m in _as_list(values["metrics"])]
        if "setting" in values and not isinstance(values["setting"], Setting):
            values["setting"] = Setting.parse(str(values["setting"]))
        if "tasks" in values:
            values["tasks"] = [t if isinstance(t, Task) else Task.parse(str(t)) for t in _as_list(values["tasks"])]
        if "families" in values:
            values["families"] = [
                f if isinstance(f, ModelFamily) else ModelFamily.parse(str(f)) for f in _as_list(values["families"])
            ]
        if "grids" in values:
            values["grids"] = {
                family if isinstance(family, ModelFamily) else ModelFamily.parse(str(family)): dict(grid)
                for family, grid in dict(values["grids"]).items()
            }
        for name in ("epsilons", "feature_fractions"):
            if name in values:
                values[name] = [float(v) for v in _as_list(values[name])]
        if "seed" in values:
            values["seed"] = int(values["seed"])
        for name in ("strict", "include_self_pairs"):
            if name in values and not isinstance(values[name], bool):
                raise ConfigError(f"{name} must be true or false, got {values[name]!r}")
    except ConfigError:
        raise
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e))
    return values


def load_run_config(path: Optional[str] = None, **overrides: Any) -> RunConfig:
    """
    Read a JSON or YAML run file (when given) and apply flag overrides on top.

    Raises:
        ConfigError: for missing files, unparsable content, unknown keys or invalid values.
    """
    config = RunConfig()
    if path is not None:
        if not os.path.isfile(path):
            raise ConfigError(f"The file {path} does not exist.")
        with open(path, "r", encoding="utf-8") as stream:
            try:
                data = yaml.safe_load(stream)
            except yaml.YAMLError as exc:
                raise ConfigError(f"{exc}")
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError(f"The run file {path} must hold a mapping of configuration keys")
        config = replace(config, **_coerce(data))
    return config.with_overrides(**overrides)


def parse_list(values: Optional[Sequence[str]]) -> List[str]:
    """Flatten repeatable flags that may also carry comma-separated values."""
    result: List[str] = []
    for value in values or []:
        result.extend(part.strip() for part in str(value).split(",") if part.strip())
    return result
