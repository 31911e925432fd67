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

from typing import List, Optional

from comprehensibility_lab.dataset.builder import (
    build_dataset,
    conflicting_groups,
    instance_feature_names,
    key_names,
    summarize_distributions,
)
from comprehensibility_lab.dataset.derived import carries
from comprehensibility_lab.dataset.io import write_dataset
from comprehensibility_lab.dataset.labels import RcConfig
from comprehensibility_lab.dataset.measurements import developer_feature_names, ingest_measurements
from comprehensibility_lab.enums.metric import Metric
from comprehensibility_lab.enums.setting import Setting
from comprehensibility_lab.enums.task import Task
from comprehensibility_lab.evaluation.reference import audit_reference_baselines
from comprehensibility_lab.evaluation.report import load_report_files
from comprehensibility_lab.evaluation.tables import TEXT, render_reference_audit, render_tables
from comprehensibility_lab.exceptions import (
    ComprehensibilityLabError,
    CorruptModel,
    ModelMismatch,
    VersionMismatch,
)
from comprehensibility_lab.extract.catalog import FEATURE_COUNT
from comprehensibility_lab.extract.corpus import FeatureTable, extract_corpus, load_snippets
from comprehensibility_lab.learn.serialization import load_model
from comprehensibility_lab.runner.compare import compare as compare_pair
from comprehensibility_lab.runner.pipeline import OK, Pipeline
from comprehensibility_lab.runner.run_config import load_run_config, parse_list
from comprehensibility_lab.utils.constants import (
    EXIT_ALL_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_MODEL_MISMATCH,
)
from comprehensibility_lab.utils.logger import configure_logging
from comprehensibility_lab.utils.utils import atomic_write_text, dumps_json
from invoke import task
from invoke.exceptions import Exit

# errors a user fixes by correcting an input
INPUT_ERRORS = (ComprehensibilityLabError, FileNotFoundError, ValueError, KeyError)


def _input_error(error: BaseException) -> Exit:
    return Exit(f"error: {error}", code=EXIT_INPUT_ERROR)


@task(
    pre=[],
    help={
        "snippets": "A .java file, a directory of .java files or a manifest CSV",
        "output": "Path of the feature CSV to write. Defaults to features.csv",
        "strict": "Fail on the first unparsable snippet (default). Use --no-strict or --lenient to skip them",
        "lenient": "Skip unparsable snippets and list them in the summary",
    },
)
def extract(ctx, snippets: str, output: str = "features.csv", strict: bool = True, lenient: bool = False) -> None:
    """
    Extract the code features of every snippet into a CSV file
    """
    configure_logging()
    try:
        table = extract_corpus(load_snippets(snippets), strict=strict and not lenient)
    except INPUT_ERRORS as e:
        raise _input_error(e)
    atomic_write_text(output, table.to_csv())
    print(f"Extracted {len(table)} snippet(s) x {FEATURE_COUNT} features to {output}")
    for record in table.skipped:
        print(f"  skipped {record.snippet_id} (line {record.line}, column {record.column}): {record.reason}")


@task(
    pre=[],
    help={"measurements": "Path of the measurements CSV"},
)
def ingest(ctx, measurements: str) -> None:
    """
    Validate a measurements CSV and print the class distribution of every metric
    """
    configure_logging()
    try:
        records = ingest_measurements(measurements)
        summary = summarize_distributions(records)
    except INPUT_ERRORS as e:
        raise _input_error(e)
    print(f"{len(records)} record(s), {len({r.snippet_id for r in records})} snippet(s)")
    for metric, per_setting in summary.items():
        for setting, distribution in per_setting.items():
            counts = (
                "excluded or absent"
                if distribution is None
                else ", ".join(f"{label}: {count}" for label, count in sorted(distribution.counts.items()))
            )
            print(f"  {metric:<6} {setting:<15} {counts}")


@task(
    pre=[],
    help={
        "features": "Path of the feature CSV",
        "measurements": "Path of the measurements CSV",
        "output": "Directory to write instances.csv and manifest.json into",
        "task": "AC or RC. Defaults to RC",
        "metric": "One of AU, PBU, ABU, ABU50, BD, BD50, RL. Defaults to AU",
        "setting": "snippet-wise or developer-wise. Defaults to snippet-wise",
        "epsilon": "Tolerance of the equal class, RC only. Defaults to 0",
        "exclude_self_pairs": "Leave out pairs of a snippet with itself (RC only)",
    },
)
def build(
    ctx,
    features: str,
    measurements: str,
    output: str,
    task: str = "RC",
    metric: str = "AU",
    setting: str = "snippet-wise",
    epsilon: float = 0.0,
    exclude_self_pairs: bool = False,
) -> None:
    """
    Build one labeled dataset and write it with its manifest
    """
    configure_logging()
    try:
        task_kind, metric_kind, setting_kind = Task.parse(task), Metric.parse(metric), Setting.parse(setting)
        epsilon = float(epsilon)
        rc_config = RcConfig(epsilon, not exclude_self_pairs) if task_kind is Task.RC else None
        if task_kind is Task.AC and epsilon != 0:
            raise ValueError("epsilon only applies to task RC")
        records = ingest_measurements(measurements)
        table = FeatureTable.from_csv(features)
        instances, distribution = build_dataset(table, records, task_kind, metric_kind, setting_kind, rc_config)
    except INPUT_ERRORS as e:
        raise _input_error(e)

    developer_names = (
        developer_feature_names([r for r in records if carries(r, metric_kind)])
        if setting_kind is Setting.DEVELOPER_WISE
        else []
    )
    written = write_dataset(
        output,
        instances,
        distribution,
        key_names(task_kind, setting_kind),
        instance_feature_names(task_kind, developer_names),
        {
            "task": task_kind.value,
            "metric": metric_kind.value,
            "setting": setting_kind.value,
            "epsilon": epsilon if task_kind is Task.RC else None,
        },
        conflicting_groups(instances),
    )
    print(f"Built {len(instances)} instance(s): " + ", ".join(
        f"{label}: {count}" for label, count in sorted(distribution.counts.items())
    ))
    for path in written:
        print(f"  wrote {path}")


@task(
    pre=[],
    iterable=["metric", "task", "epsilon", "family", "features_top"],
    help={
        "config": "Path of a JSON or YAML run file; flags override its values",
        "snippets": "A .java file, a directory of .java files or a manifest CSV",
        "features": "A precomputed feature CSV (skips extraction)",
        "measurements": "Path of the measurements CSV",
        "output": "Output directory",
        "metric": "Metric to evaluate (repeatable)",
        "setting": "snippet-wise or developer-wise",
        "task": "AC or RC (repeatable)",
        "epsilon": "Tolerance of the equal class, RC only (repeatable)",
        "family": "Model family NB, KNN, LR, MLP, RF or SVM (repeatable)",
        "seed": "Master seed",
        "features_top": "Share of ranked code features to try: 0.1, 0.2, ... 1.0 (repeatable)",
        "strict": "Fail on the first unparsable snippet (default)",
        "lenient": "Skip unparsable snippets",
    },
)
def pipeline(
    ctx,
    config: Optional[str] = None,
    snippets: Optional[str] = None,
    features: Optional[str] = None,
    measurements: Optional[str] = None,
    output: Optional[str] = None,
    metric: Optional[List[str]] = None,
    setting: Optional[str] = None,
    task: Optional[List[str]] = None,
    epsilon: Optional[List[str]] = None,
    family: Optional[List[str]] = None,
    seed: Optional[str] = None,
    features_top: Optional[List[str]] = None,
    strict: bool = True,
    lenient: bool = False,
) -> None:
    """
    Run nested cross-validation for every configured experiment and write the reports
    """
    configure_logging()
    try:
        run_config = load_run_config(
            config,
            snippets=snippets,
            features=features,
            measurements=measurements,
            output=output,
            metrics=parse_list(metric),
            setting=setting,
            tasks=parse_list(task),
            epsilons=parse_list(epsilon),
            families=parse_list(family),
            seed=seed,
            feature_fractions=parse_list(features_top),
            strict=False if (lenient or not strict) else None,
        )
        result = Pipeline(run_config).run()
    except INPUT_ERRORS as e:
        raise _input_error(e)

    for entry in result.entries:
        where = f"{entry.task} {entry.setting} {entry.metric} eps={entry.epsilon} {entry.family}"
        detail = entry.report if entry.status == OK else entry.reason
        print(f"{entry.status:<8} {where}: {detail}")
    for record in result.skipped:
        print(f"skipped  {record.snippet_id}: {record.reason}")
    print(f"{result.succeeded} of {len(result.entries)} configuration(s) succeeded; output in {run_config.output}")
    if result.exit_code == EXIT_ALL_FAILED:
        raise Exit("error: every configuration failed", code=EXIT_ALL_FAILED)


@task(
    pre=[],
    help={
        "model": "Path of a model file written by the pipeline (RC, snippet-wise)",
        "first": "First .java snippet",
        "second": "Second .java snippet",
        "both_orders": "Also evaluate the swapped pair; disagreeing orders give label 2",
    },
)
def compare(ctx, model: str, first: str, second: str, both_orders: bool = False) -> None:
    """
    Predict which of two snippets is more comprehensible
    """
    configure_logging()
    try:
        trained = load_model(model)
    except (CorruptModel, VersionMismatch, FileNotFoundError) as e:
        raise _input_error(e)
    try:
        verdict = compare_pair(trained, load_snippets(first)[0], load_snippets(second)[0], both_orders)
    except ModelMismatch as e:
        raise Exit(f"error: {e}", code=EXIT_MODEL_MISMATCH)
    except INPUT_ERRORS as e:
        raise _input_error(e)
    print(verdict.describe(first, second))
    print(dumps_json(verdict.to_dict()), end="")


@task(
    pre=[],
    iterable=["path"],
    help={
        "path": "Report file or directory (repeatable; directories are searched recursively)",
        "table": "Output format: text (default) or csv",
        "reference": "Also recompute the published baseline cells from their class counts",
    },
)
def report(ctx, path: Optional[List[str]] = None, table: str = TEXT, reference: bool = False) -> None:
    """
    Render evaluation and comparison reports as tables
    """
    configure_logging()
    paths = list(path or [])
    output = []
    try:
        if paths or not reference:
            evaluations, comparisons = load_report_files(paths)
            output.append(render_tables(evaluations, comparisons, table))
        if reference:
            output.append(render_reference_audit(audit_reference_baselines(), table))
    except INPUT_ERRORS as e:
        raise _input_error(e)
    print("\n".join(output), end="")
