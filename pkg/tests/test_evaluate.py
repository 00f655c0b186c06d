from __future__ import annotations

import math
import random

import pytest

from citysolution.classifier import LabeledImage, evaluate, parse_prediction_file
from citysolution.errors import LabelMismatch, MissingPrediction

FOUR_CLASSES = ("DamagedRoad", "Flood", "Trash", "HomelessPeople")


def labeled(label: str, i: int) -> LabeledImage:
    return LabeledImage(f"{label}/{i}", label, b"")


def fixture_with_diagonal(totals, correct, labels):
    """Test set plus predictions: ``correct[k]`` hits, misses spill to the next class."""
    test_set = []
    predictions = {}
    for k, label in enumerate(labels):
        for i in range(totals[k]):
            item = labeled(label, i)
            test_set.append(item)
            if i < correct[k]:
                predictions[item.item_id] = label
            else:
                predictions[item.item_id] = labels[(k + 1) % len(labels)]
    return test_set, predictions


class TestPublishedCounts:
    TOTALS = (161, 178, 243, 244)
    CORRECT = (160, 174, 239, 240)

    def test_accuracy_and_recalls(self):
        test_set, predictions = fixture_with_diagonal(self.TOTALS, self.CORRECT, FOUR_CLASSES)
        report = evaluate(predictions, test_set, labels=FOUR_CLASSES)
        assert report.totals == self.TOTALS
        assert [report.confusion[k][k] for k in range(4)] == list(self.CORRECT)
        assert math.isclose(report.accuracy, 813 / 826, abs_tol=1e-12)
        assert math.isclose(report.accuracy, 0.984262, abs_tol=1e-6)
        for recall, expected in zip(report.recall, (0.993789, 0.977528, 0.983539, 0.983607)):
            assert math.isclose(recall, expected, abs_tol=1e-6)


def test_all_correct_predictions():
    test_set = [labeled(label, i) for label in FOUR_CLASSES for i in range(5)]
    predictions = {item.item_id: item.label for item in test_set}
    report = evaluate(predictions, test_set, labels=FOUR_CLASSES)
    assert report.accuracy == 1.0
    assert report.recall == (1.0, 1.0, 1.0, 1.0)
    assert report.precision == (1.0, 1.0, 1.0, 1.0)
    assert report.f1 == (1.0, 1.0, 1.0, 1.0)


def test_two_class_toy_confusion():
    # True A items predicted (A, B); true B items both predicted B.
    test_set = [labeled("A", 0), labeled("A", 1), labeled("B", 0), labeled("B", 1)]
    predictions = {"A/0": "A", "A/1": "B", "B/0": "B", "B/1": "B"}
    report = evaluate(predictions, test_set, labels=("A", "B"))
    assert report.confusion == ((1, 1), (0, 2))
    assert report.accuracy == 0.75
    assert report.recall == (0.5, 1.0)
    assert report.precision == (1.0, 2 / 3)


def test_empty_predicted_column_yields_zero_precision():
    test_set = [labeled("A", 0), labeled("B", 0)]
    predictions = {"A/0": "A", "B/0": "A"}
    report = evaluate(predictions, test_set, labels=("A", "B"))
    assert report.precision[1] == 0.0
    assert report.recall[1] == 0.0
    assert report.f1[1] == 0.0


def test_missing_prediction():
    test_set = [labeled("A", 0), labeled("A", 1)]
    with pytest.raises(MissingPrediction):
        evaluate({"A/0": "A"}, test_set, labels=("A",))


def test_unknown_predicted_label():
    test_set = [labeled("A", 0)]
    with pytest.raises(LabelMismatch):
        evaluate({"A/0": "Z"}, test_set, labels=("A",))


def test_unknown_true_label():
    test_set = [labeled("Z", 0)]
    with pytest.raises(LabelMismatch):
        evaluate({"Z/0": "A"}, test_set, labels=("A",))


def test_prediction_file_parsing(tmp_path):
    path = tmp_path / "preds.tsv"
    path.write_text("a/1\tFlood\nb/2\tTrash\n\n", encoding="utf-8")
    assert parse_prediction_file(path) == {"a/1": "Flood", "b/2": "Trash"}


def test_malformed_prediction_line(tmp_path):
    path = tmp_path / "preds.tsv"
    path.write_text("no-tab-here\n", encoding="utf-8")
    with pytest.raises(MissingPrediction):
        parse_prediction_file(path)


def test_metrics_match_brute_force_recount_on_random_instances():
    """Accuracy and per-class recall recomputed naively from the raw pairs."""
    rng = random.Random(99)
    for _ in range(30):
        n = rng.randint(1, 500)
        pairs = [(rng.choice(FOUR_CLASSES), rng.choice(FOUR_CLASSES)) for _ in range(n)]
        test_set = [labeled(true, i) for i, (true, _) in enumerate(pairs)]
        predictions = {f"{true}/{i}": pred for i, (true, pred) in enumerate(pairs)}
        report = evaluate(predictions, test_set, labels=FOUR_CLASSES)

        assert math.isclose(
            report.accuracy, sum(t == p for t, p in pairs) / n, abs_tol=1e-12
        )
        for k, label in enumerate(FOUR_CLASSES):
            of_class = [p for t, p in pairs if t == label]
            expected = (
                sum(p == label for p in of_class) / len(of_class) if of_class else 0.0
            )
            assert math.isclose(report.recall[k], expected, abs_tol=1e-12)
            assert report.totals[k] == len(of_class)
        assert sum(report.totals) == n
