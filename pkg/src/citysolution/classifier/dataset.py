"""Labeled datasets and the deterministic train/test split.

The per-class test count is the ceiling of the test fraction times the class
size, computed in exact decimal arithmetic: the binary float ``1 - 0.85``
overshoots 0.15 and would round a class of 20 up to 4 test items instead
of 3.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import EmptyClass, LabelMismatch

MODEL_CLASSES = ("DamagedRoad", "Flood", "Trash", "HomelessPeople")

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg")


@dataclass(frozen=True)
class LabeledImage:
    item_id: str
    label: str
    image_bytes: bytes


def test_count(class_size: int, train_fraction: float = 0.85) -> int:
    """ceiling(test_fraction * class_size) under exact decimal arithmetic."""
    test_fraction = 1 - Fraction(str(train_fraction))
    return math.ceil(test_fraction * class_size)


def split_dataset(
    items: Sequence[LabeledImage],
    train_fraction: float = 0.85,
    seed: int = 0,
    labels: Sequence[str] | None = None,
) -> tuple[list[LabeledImage], list[LabeledImage]]:
    """Per-class shuffle-and-cut split; deterministic for a given seed.

    Returns (train, test). Train and test are disjoint and their union is the
    input. When ``labels`` is omitted the classes are taken in order of first
    appearance.
    """
    if labels is None:
        labels = list(dict.fromkeys(item.label for item in items))
    by_label: dict[str, list[LabeledImage]] = {label: [] for label in labels}
    for item in items:
        if item.label not in by_label:
            raise LabelMismatch(f"item {item.item_id!r} has unknown label {item.label!r}")
        by_label[item.label].append(item)
    if not labels or any(not group for group in by_label.values()):
        raise EmptyClass("every class needs at least one item")

    rng = random.Random(seed)
    train: list[LabeledImage] = []
    test: list[LabeledImage] = []
    for label in labels:
        group = list(by_label[label])
        rng.shuffle(group)
        cut = test_count(len(group), train_fraction)
        test.extend(group[:cut])
        train.extend(group[cut:])
    return train, test


def load_labeled_directory(path: str | os.PathLike) -> list[LabeledImage]:
    """Read a dataset laid out as one subdirectory per class name.

    The four platform classes come out in their fixed index order; any other
    label set comes out alphabetically.
    """
    labels = sorted(
        name for name in os.listdir(path) if os.path.isdir(os.path.join(path, name))
    )
    if set(labels) == set(MODEL_CLASSES):
        labels = list(MODEL_CLASSES)
    items: list[LabeledImage] = []
    for label in labels:
        class_dir = os.path.join(path, label)
        for name in sorted(os.listdir(class_dir)):
            if not name.lower().endswith(IMAGE_EXTENSIONS):
                continue
            with open(os.path.join(class_dir, name), "rb") as fh:
                items.append(LabeledImage(f"{label}/{name}", label, fh.read()))
    if not items:
        raise EmptyClass(f"no labeled images under {os.fspath(path)!r}")
    return items
