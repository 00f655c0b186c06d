"""Confusion-matrix evaluation of a model or of a precomputed prediction file."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import LabelMismatch, MissingPrediction
from .dataset import LabeledImage
from .model import Model, classify
from .preprocess import preprocess


@dataclass(frozen=True)
class EvaluationReport:
    labels: tuple[str, ...]
    confusion: tuple[tuple[int, ...], ...]  # rows = true class, columns = predicted
    totals: tuple[int, ...]
    accuracy: float
    recall: tuple[float, ...]
    precision: tuple[float, ...]
    f1: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "confusion": [list(row) for row in self.confusion],
            "totals": list(self.totals),
            "accuracy": self.accuracy,
            "recall": list(self.recall),
            "precision": list(self.precision),
            "f1": list(self.f1),
        }


def parse_prediction_file(path: str | os.PathLike) -> dict[str, str]:
    """One line per item: ``item_id<TAB>predicted_label``."""
    predictions: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            item_id, sep, label = line.partition("\t")
            if not sep:
                raise MissingPrediction(f"malformed prediction line: {line!r}")
            predictions[item_id] = label
    return predictions


def evaluate(
    model_or_predictions: Model | Mapping[str, str],
    test_set: Sequence[LabeledImage],
    labels: Sequence[str] | None = None,
) -> EvaluationReport:
    """Fill the confusion matrix and derive accuracy, recall, precision, and F1."""
    if labels is None:
        labels = getattr(model_or_predictions, "labels", None) or list(
            dict.fromkeys(item.label for item in test_set)
        )
    index = {label: i for i, label in enumerate(labels)}
    matrix = np.zeros((len(labels), len(labels)), dtype=np.int64)

    predicting_model = hasattr(model_or_predictions, "predict")
    for item in test_set:
        if item.label not in index:
            raise LabelMismatch(f"item {item.item_id!r} has unknown label {item.label!r}")
        if predicting_model:
            predicted = classify(model_or_predictions, preprocess(item.image_bytes)).label
        else:
            try:
                predicted = model_or_predictions[item.item_id]
            except KeyError:
                raise MissingPrediction(f"no prediction for {item.item_id!r}") from None
        if predicted not in index:
            raise LabelMismatch(f"prediction {predicted!r} is not a known label")
        matrix[index[item.label], index[predicted]] += 1

    totals = matrix.sum(axis=1)
    grand_total = int(matrix.sum())
    diag = np.diag(matrix)
    col_sums = matrix.sum(axis=0)
    recall = np.divide(diag, totals, out=np.zeros(len(labels)), where=totals > 0)
    precision = np.divide(diag, col_sums, out=np.zeros(len(labels)), where=col_sums > 0)
    pr_sum = precision + recall
    f1 = np.divide(2 * precision * recall, pr_sum, out=np.zeros(len(labels)), where=pr_sum > 0)

    return EvaluationReport(
        labels=tuple(labels),
        confusion=tuple(tuple(int(v) for v in row) for row in matrix),
        totals=tuple(int(t) for t in totals),
        accuracy=float(diag.sum() / grand_total) if grand_total else 0.0,
        recall=tuple(float(r) for r in recall),
        precision=tuple(float(p) for p in precision),
        f1=tuple(float(v) for v in f1),
    )
