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
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from comprehensibility_lab.dataset.distribution import class_distribution
from comprehensibility_lab.evaluation.baselines import baseline_report
from comprehensibility_lab.evaluation.confusion import ConfusionMatrix
from comprehensibility_lab.evaluation.folds import fold_plan
from comprehensibility_lab.evaluation.improvement import ImprovementReport
from comprehensibility_lab.evaluation.metrics import metric_report, weighted_prf
from comprehensibility_lab.evaluation.report import ConfigurationResult, EvaluationReport, ExperimentKey
from comprehensibility_lab.exceptions import ComprehensibilityLabError
from comprehensibility_lab.learn.preprocessing import check_fraction
from comprehensibility_lab.learn.training import ModelSpec, fit
from comprehensibility_lab.utils.constants import INNER_FOLDS, OUTER_FOLDS
from comprehensibility_lab.utils.utils import derive_seed, max_threads

logger = logging.getLogger(__name__)

# stage tags of the fit seeds
_INNER_FIT_STAGE = 20
_OUTER_FIT_STAGE = 30


@dataclass(frozen=True)
class Configuration:
    """A grid point combined with a feature fraction; `grid_index` orders them."""

    grid_index: int
    hyperparams: Dict[str, Any]
    fraction: float


def configurations(spec: ModelSpec, fractions: Sequence[float]) -> List[Configuration]:
    for fraction in fractions:
        check_fraction(fraction)
    return [
        Configuration(index, hyperparams, float(fraction))
        for index, (hyperparams, fraction) in enumerate(itertools.product(spec.grid_points(), fractions))
    ]


def fit_and_test(
    spec: ModelSpec,
    configuration: Configuration,
    X: np.ndarray,
    y: np.ndarray,
    train: np.ndarray,
    test: np.ndarray,
    labels: Sequence[int],
    feature_names: Optional[Sequence[str]],
    always_keep: Sequence[int],
    seed: int,
) -> ConfusionMatrix:
    """Train on the `train` rows only and count predictions on the `test` rows."""
    model = fit(
        spec,
        configuration.hyperparams,
        X[train],
        y[train],
        fraction=configuration.fraction,
        feature_names=feature_names,
        always_keep=always_keep,
        seed=seed,
    )
    predicted = model.predict(model.project(X[test]))
    return ConfusionMatrix.from_predictions(y[test], predicted, labels)


def _guarded(*args: Any) -> Tuple[Optional[ConfusionMatrix], Optional[str]]:
    try:
        return fit_and_test(*args), None
    except (ComprehensibilityLabError, ValueError) as e:
        return None, f"{type(e).__name__}: {e}"


def _select(
    scores: Dict[Tuple[int, int], List[float]], split: int, candidates: Sequence[Configuration]
) -> Optional[Configuration]:
    """Highest mean inner wF1; the lowest grid index wins ties."""
    best: Optional[Configuration] = None
    best_score = -np.inf
    for configuration in candidates:
        values = scores.get((split, configuration.grid_index))
        if not values:
            continue
        score = float(np.mean(values))
        if score > best_score:
            best, best_score = configuration, score
    return best


def nested_cv(
    X: np.ndarray,
    y: np.ndarray,
    spec: ModelSpec,
    fractions: Sequence[float] = (1.0,),
    seed: Optional[int] = None,
    key: Optional[ExperimentKey] = None,
    feature_names: Optional[Sequence[str]] = None,
    always_keep: Sequence[int] = (),
    threads: Optional[int] = None,
    outer_folds: int = OUTER_FOLDS,
    inner_folds: int = INNER_FOLDS,
) -> EvaluationReport:
    """
    Nested cross-validation of one model family.

    Every outer split runs an inner grid search over hyperparameters and feature
    fractions, scored by mean validation wF1. The optimal configurations of all
    splits (deduplicated) are then each trained on every outer training set and
    tested on its fold. Confusion counts are pooled across folds per configuration.

    Args:
        X: instance features.
        y: instance labels.
        spec: family, grid and default seed.
        fractions: feature fractions searched together with the grid.
        seed: master seed; defaults to `spec.seed`.
        key: experiment the report belongs to.
        feature_names: column names of X.
        always_keep: columns exempt from feature selection.
        threads: joblib workers; defaults to the environment cap.

    Raises:
        TooFewPerClass: if the labels cannot be stratified into the folds.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y).astype(int)
    seed = spec.seed if seed is None else seed
    key = key or ExperimentKey(task="", setting="", metric="")
    workers = threads or max_threads()
    candidates = configurations(spec, fractions)
    labels = sorted(int(label) for label in np.unique(y))
    plan = fold_plan(y, seed, outer_folds, inner_folds)
    failures: List[str] = []

    inner_jobs = [
        (split, configuration, fold_index, fold)
        for split in range(len(plan.outer))
        for configuration in candidates
        for fold_index, fold in enumerate(plan.inner[split])
    ]
    inner_results = Parallel(n_jobs=workers)(
        delayed(_guarded)(
            spec, configuration, X, y, fold.train, fold.test, labels, feature_names, always_keep,
            derive_seed(seed, _INNER_FIT_STAGE, configuration.grid_index, split * inner_folds + fold_index),
        )
        for split, configuration, fold_index, fold in inner_jobs
    )

    scores: Dict[Tuple[int, int], List[float]] = defaultdict(list)
    for (split, configuration, fold_index, _), (confusion, error) in zip(inner_jobs, inner_results):
        if confusion is None:
            message = f"split {split}, grid point {configuration.grid_index}, fold {fold_index}: {error}"
            logger.warning("Inner fit failed on %s", message)
            failures.append(message)
            continue
        scores[(split, configuration.grid_index)].append(weighted_prf(confusion)[2])

    selected: Dict[int, List[int]] = {}
    optimal: List[Configuration] = []
    for split in range(len(plan.outer)):
        best = _select(scores, split, candidates)
        if best is None:
            failures.append(f"split {split}: every grid point failed")
            continue
        if best.grid_index not in selected:
            selected[best.grid_index] = []
            optimal.append(best)
        selected[best.grid_index].append(split)
    logger.info("%d distinct optimal configuration(s) over %d outer splits", len(optimal), len(plan.outer))

    outer_jobs = [(configuration, split) for configuration in optimal for split in range(len(plan.outer))]
    outer_results = Parallel(n_jobs=workers)(
        delayed(_guarded)(
            spec, configuration, X, y, plan.outer[split].train, plan.outer[split].test, labels,
            feature_names, always_keep, derive_seed(seed, _OUTER_FIT_STAGE, configuration.grid_index, split),
        )
        for configuration, split in outer_jobs
    )

    baseline = baseline_report(class_distribution(y))
    results = []
    for configuration in optimal:
        pooled = ConfusionMatrix.empty(labels)
        evaluations = 0
        failure: Optional[str] = None
        for (owner, split), (confusion, error) in zip(outer_jobs, outer_results):
            if owner is not configuration:
                continue
            if confusion is None:
                failure = failure or f"split {split}: {error}"
                continue
            pooled = pooled + confusion
            evaluations += 1
        result = ConfigurationResult(
            grid_index=configuration.grid_index,
            hyperparams=configuration.hyperparams,
            fraction=configuration.fraction,
            selected_in_splits=selected[configuration.grid_index],
            outer_evaluations=evaluations,
        )
        if failure is not None:
            logger.warning("Configuration %d failed: %s", configuration.grid_index, failure)
            failures.append(f"configuration {configuration.grid_index}: {failure}")
            result.failure = failure
        else:
            result.confusion = pooled
            result.metrics = metric_report(pooled)
            result.improvement = ImprovementReport.of(result.metrics.weighted_f1, baseline.best.value)
        results.append(result)

    return EvaluationReport(
        task=key.task,
        setting=key.setting,
        metric=key.metric,
        epsilon=key.epsilon,
        family=spec.family.value,
        seed=seed,
        feature_fractions=[float(f) for f in fractions],
        grid_size=len(candidates),
        class_distribution=class_distribution(y),
        baseline=baseline,
        configurations=results,
        failures=failures,
    )
