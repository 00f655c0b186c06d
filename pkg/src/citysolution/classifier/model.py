"""Prediction models: the trainable mean-color baseline and its JSON artifact.

The baseline keeps one mean-RGB centroid per class and scores a tensor by
softmax over negative squared distances. It exists to make the platform
self-contained and deterministic; a stronger model can ship as another
artifact kind behind the same interface.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import numpy as np

from ..errors import (
    CorruptArtifact,
    EmptyClass,
    ModelUnavailable,
    UnsupportedModelKind,
)
from .dataset import MODEL_CLASSES, LabeledImage
from .preprocess import IMAGE_SIZE, mean_rgb, preprocess

BASELINE_KIND = "baseline-centroid"
DEFAULT_SHARPNESS = 20.0


@dataclass(frozen=True)
class TrainingConfig:
    """Recorded as model metadata; the baseline trainer only uses train_fraction."""

    epochs: int = 200
    batch_size: int = 16
    learning_rate: float = 0.001
    train_fraction: float = 0.85

    def to_dict(self) -> dict:
        return {
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "train_fraction": self.train_fraction,
        }


@dataclass(frozen=True)
class Prediction:
    label: str
    probabilities: tuple[float, ...]


class Model(Protocol):
    labels: tuple[str, ...]

    def predict(self, tensor: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class CentroidModel:
    labels: tuple[str, ...]
    centroids: np.ndarray  # shape (len(labels), 3)
    sharpness: float = DEFAULT_SHARPNESS
    training_config: TrainingConfig = field(default_factory=TrainingConfig)

    def predict(self, tensor: np.ndarray) -> np.ndarray:
        color = mean_rgb(tensor)
        d2 = ((self.centroids - color) ** 2).sum(axis=1)
        scores = -self.sharpness * d2
        scores -= scores.max()
        weights = np.exp(scores)
        return weights / weights.sum()


def train_baseline(
    train_set: Sequence[LabeledImage],
    config: TrainingConfig | None = None,
    labels: Sequence[str] | None = None,
) -> CentroidModel:
    """Compute one mean-RGB centroid per class over the preprocessed tensors."""
    config = config or TrainingConfig()
    if labels is None:
        labels = list(dict.fromkeys(item.label for item in train_set))
    colors: dict[str, list[np.ndarray]] = {label: [] for label in labels}
    for item in train_set:
        if item.label in colors:
            colors[item.label].append(mean_rgb(preprocess(item.image_bytes)))
    if not labels or any(not group for group in colors.values()):
        raise EmptyClass("every class needs at least one training item")
    centroids = np.stack([np.mean(colors[label], axis=0) for label in labels])
    return CentroidModel(tuple(labels), centroids, DEFAULT_SHARPNESS, config)


def classify(model: Model | None, tensor: np.ndarray) -> Prediction:
    """Run the model; the label is the argmax with lowest-index tie-break."""
    if model is None:
        raise ModelUnavailable("no model configured")
    probabilities = np.asarray(model.predict(tensor), dtype=np.float64)
    label = model.labels[int(np.argmax(probabilities))]
    return Prediction(label, tuple(float(p) for p in probabilities))


def save_model(model: CentroidModel, path: str | os.PathLike) -> None:
    artifact = {
        "kind": BASELINE_KIND,
        "labels": list(model.labels),
        "input": {"h": IMAGE_SIZE, "w": IMAGE_SIZE, "c": 3},
        "params": {
            "sharpness": model.sharpness,
            "centroids": [[float(v) for v in row] for row in model.centroids],
        },
        "training_config": model.training_config.to_dict(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(artifact, fh, indent=2)
        fh.write("\n")


def load_model(path: str | os.PathLike) -> CentroidModel:
    """Load a self-describing JSON artifact; only the baseline kind is built in."""
    try:
        with open(path, encoding="utf-8") as fh:
            artifact = json.load(fh)
    except (OSError, ValueError) as exc:
        raise CorruptArtifact(f"cannot read model artifact: {exc}") from exc
    if not isinstance(artifact, dict):
        raise CorruptArtifact("artifact is not a JSON object")
    kind = artifact.get("kind")
    if kind != BASELINE_KIND:
        raise UnsupportedModelKind(f"unsupported model kind {kind!r}")
    labels = artifact.get("labels")
    if not isinstance(labels, list) or len(labels) != len(MODEL_CLASSES):
        raise UnsupportedModelKind("the platform requires exactly four classes")
    shape = artifact.get("input")
    if shape != {"h": IMAGE_SIZE, "w": IMAGE_SIZE, "c": 3}:
        raise UnsupportedModelKind(f"unsupported input shape {shape!r}")
    try:
        params = artifact["params"]
        centroids = np.asarray(params["centroids"], dtype=np.float64)
        sharpness = float(params["sharpness"])
        config = TrainingConfig(**artifact["training_config"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptArtifact(f"bad artifact parameters: {exc}") from exc
    if centroids.shape != (len(labels), 3):
        raise CorruptArtifact(f"centroid matrix has shape {centroids.shape}")
    return CentroidModel(tuple(labels), centroids, sharpness, config)
