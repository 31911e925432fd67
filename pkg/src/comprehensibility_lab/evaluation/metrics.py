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

from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from comprehensibility_lab.enums.effect_band import EffectBand
from comprehensibility_lab.evaluation.confusion import ConfusionMatrix
from comprehensibility_lab.exceptions import EmptyMatrix


def _safe_divide(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    numerator = np.asarray(numerator, dtype=float)
    denominator = np.asarray(denominator, dtype=float)
    result = np.zeros_like(numerator)
    np.divide(numerator, denominator, out=result, where=denominator != 0)
    return result


def per_class_prf(confusion: ConfusionMatrix) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Precision, recall, F1 and support per label; empty denominators give 0."""
    matrix = np.asarray(confusion.matrix, dtype=float)
    if matrix.sum() == 0:
        raise EmptyMatrix("Confusion matrix holds no instances")
    tp = np.diag(matrix)
    precision = _safe_divide(tp, matrix.sum(axis=0))
    recall = _safe_divide(tp, matrix.sum(axis=1))
    f1 = _safe_divide(2 * precision * recall, precision + recall)
    return precision, recall, f1, matrix.sum(axis=1)


def weighted_prf(confusion: ConfusionMatrix) -> Tuple[float, float, float]:
    """
    Support-weighted precision, recall and F1.

    Raises:
        EmptyMatrix: if the matrix is all zeros.
    """
    precision, recall, f1, support = per_class_prf(confusion)
    weights = support / support.sum()
    return float(weights @ precision), float(weights @ recall), float(weights @ f1)


def mcc(confusion: ConfusionMatrix) -> float:
    """Multiclass Matthews correlation (covariance form); 0 when undefined."""
    matrix = np.asarray(confusion.matrix, dtype=float)
    n = matrix.sum()
    true_sums = matrix.sum(axis=1)
    predicted_sums = matrix.sum(axis=0)
    cov_true_pred = np.trace(matrix) * n - true_sums @ predicted_sums
    cov_pred_pred = n * n - predicted_sums @ predicted_sums
    cov_true_true = n * n - true_sums @ true_sums
    if cov_pred_pred * cov_true_true == 0:
        return 0.0
    return float(cov_true_pred / np.sqrt(cov_true_true * cov_pred_pred))


def kappa_terms(confusion: ConfusionMatrix) -> Tuple[float, float]:
    """Observed and chance agreement (p_o, p_e)."""
    matrix = np.asarray(confusion.matrix, dtype=float)
    n = matrix.sum()
    if n == 0:
        return 0.0, 0.0
    observed = np.trace(matrix) / n
    expected = float(matrix.sum(axis=1) @ matrix.sum(axis=0)) / (n * n)
    return float(observed), expected


def cohen_kappa(confusion: ConfusionMatrix) -> float:
    observed, expected = kappa_terms(confusion)
    if 1 - expected == 0:
        return 0.0
    return (observed - expected) / (1 - expected)


@dataclass(frozen=True)
class MetricReport:
    labels: List[int]
    precision: List[float]
    recall: List[float]
    f1: List[float]
    support: List[int]
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    mcc: float
    kappa: float
    observed_agreement: float
    expected_agreement: float
    mcc_band: str
    kappa_band: str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "MetricReport":
        return cls(**payload)


def metric_report(confusion: ConfusionMatrix) -> MetricReport:
    precision, recall, f1, support = per_class_prf(confusion)
    w_precision, w_recall, w_f1 = weighted_prf(confusion)
    matthews = mcc(confusion)
    kappa = cohen_kappa(confusion)
    observed, expected = kappa_terms(confusion)
    return MetricReport(
        labels=list(confusion.labels),
        precision=[float(v) for v in precision],
        recall=[float(v) for v in recall],
        f1=[float(v) for v in f1],
        support=[int(v) for v in support],
        weighted_precision=w_precision,
        weighted_recall=w_recall,
        weighted_f1=w_f1,
        mcc=matthews,
        kappa=kappa,
        observed_agreement=observed,
        expected_agreement=expected,
        mcc_band=EffectBand.of(matthews).value,
        kappa_band=EffectBand.of(kappa).value,
    )
