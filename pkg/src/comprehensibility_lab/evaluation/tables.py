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

from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from comprehensibility_lab.enums.metric import Metric
from comprehensibility_lab.enums.model_family import ModelFamily
from comprehensibility_lab.evaluation.reference import ReferenceCheck
from comprehensibility_lab.evaluation.report import ComparisonReport, EvaluationReport
from comprehensibility_lab.utils.utils import format_epsilon

TEXT = "text"
CSV = "csv"
TABLE_FORMATS = (TEXT, CSV)

_METRIC_ORDER = [m.value for m in Metric]
_FAMILY_ORDER = [f.value for f in ModelFamily]
MISSING = "-"


def format_ri(ri: Optional[float]) -> str:
    """Percent with an explicit sign, so improvements and regressions stand out."""
    if ri is None:
        return MISSING
    return f"{ri * 100:+.1f}%"


def _format_value(value: Optional[float]) -> str:
    return MISSING if value is None else f"{value:.3f}"


def _ordered(values, order: List[str]) -> List[str]:
    return sorted(set(values), key=lambda v: order.index(v) if v in order else len(order))


def _render(frames: Dict[str, pd.DataFrame], table_format: str) -> str:
    if table_format not in TABLE_FORMATS:
        raise ValueError(f"Unknown table format '{table_format}'. Valid formats: {', '.join(TABLE_FORMATS)}")
    if table_format == CSV:
        combined = pd.concat(
            [frame.assign(group=title) for title, frame in frames.items()], ignore_index=True
        )
        return combined.to_csv(index=False, lineterminator="\n")
    blocks = [f"{title}\n{frame.to_string(index=False)}" for title, frame in frames.items()]
    return "\n\n".join(blocks) + "\n"


def evaluation_frames(reports: Sequence[EvaluationReport]) -> Dict[str, pd.DataFrame]:
    """One frame per (task, setting, epsilon): metric rows, baseline and per-family wF1 and RI."""
    groups: Dict[Tuple[str, str, str], List[EvaluationReport]] = defaultdict(list)
    for report in reports:
        groups[(report.task, report.setting, format_epsilon(report.epsilon))].append(report)

    frames = {}
    for (task, setting, epsilon), members in sorted(groups.items()):
        families = _ordered((r.family for r in members), _FAMILY_ORDER)
        by_cell = {(r.metric, r.family): r for r in members}
        rows = []
        for metric in _ordered((r.metric for r in members), _METRIC_ORDER):
            first = next(r for r in members if r.metric == metric)
            best = first.baseline.best
            row = {"Metric": metric, "Baseline wF1": f"({best.name}) {best.value:.3f}"}
            for family in families:
                cell = by_cell.get((metric, family))
                row[f"{family} wF1"] = _format_value(cell.averaged_wf1 if cell else None)
                row[f"{family} RI"] = format_ri(cell.averaged_ri if cell else None)
            rows.append(row)
        frames[f"{task} {setting} eps={epsilon}"] = pd.DataFrame(rows)
    return frames


def comparison_frames(comparisons: Sequence[ComparisonReport]) -> Dict[str, pd.DataFrame]:
    """Delta-RI tables: per metric and family the AC and RC improvements, their difference and p."""
    groups: Dict[Tuple[str, str], List[ComparisonReport]] = defaultdict(list)
    for comparison in comparisons:
        groups[(comparison.setting, format_epsilon(comparison.epsilon))].append(comparison)

    frames = {}
    for (setting, epsilon), members in sorted(groups.items()):
        families = _ordered((c.family for c in members), _FAMILY_ORDER)
        by_cell = {(c.metric, c.family): c for c in members}
        rows = []
        for metric in _ordered((c.metric for c in members), _METRIC_ORDER):
            row = {"Metric": metric}
            for family in families:
                cell = by_cell.get((metric, family))
                row[f"{family} RI_AC"] = format_ri(cell.mean_ri_ac if cell else None)
                row[f"{family} RI_RC"] = format_ri(cell.mean_ri_rc if cell else None)
                row[f"{family} dRI"] = format_ri(cell.delta_ri if cell else None)
                row[f"{family} p"] = MISSING if cell is None else f"{cell.p_value:.3f}{'*' if cell.significant else ''}"
            rows.append(row)
        frames[f"delta RI {setting} eps={epsilon}"] = pd.DataFrame(rows)
    return frames


def render_tables(
    reports: Sequence[EvaluationReport], comparisons: Sequence[ComparisonReport] = (), table_format: str = TEXT
) -> str:
    frames = evaluation_frames(reports)
    frames.update(comparison_frames(comparisons))
    if not frames:
        raise ValueError("Nothing to render")
    return _render(frames, table_format)


def render_reference_audit(checks: Sequence[ReferenceCheck], table_format: str = TEXT) -> str:
    frame = pd.DataFrame([check.to_dict() for check in checks])
    return _render({"published baseline audit": frame}, table_format)
