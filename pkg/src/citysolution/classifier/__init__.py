"""Image preprocessing, a pluggable prediction model, and the evaluation harness."""

from .preprocess import IMAGE_SIZE, mean_rgb, preprocess
from .dataset import LabeledImage, load_labeled_directory, split_dataset, test_count
from .model import (
    BASELINE_KIND,
    MODEL_CLASSES,
    CentroidModel,
    Model,
    Prediction,
    TrainingConfig,
    classify,
    load_model,
    save_model,
    train_baseline,
)
from .evaluate import EvaluationReport, evaluate, parse_prediction_file

__all__ = [
    "IMAGE_SIZE",
    "mean_rgb",
    "preprocess",
    "LabeledImage",
    "load_labeled_directory",
    "split_dataset",
    "test_count",
    "BASELINE_KIND",
    "MODEL_CLASSES",
    "CentroidModel",
    "Model",
    "Prediction",
    "TrainingConfig",
    "classify",
    "load_model",
    "save_model",
    "train_baseline",
    "EvaluationReport",
    "evaluate",
    "parse_prediction_file",
]
