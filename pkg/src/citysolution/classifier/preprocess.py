"""Decode raster bytes into the model input tensor.

Inputs are squashed to a fixed square with bilinear interpolation (no
letterboxing) and scaled from 8-bit channels into [0, 1].
"""

from __future__ import annotations

import io

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..errors import InvalidImage

IMAGE_SIZE = 224


def preprocess(image_bytes: bytes) -> np.ndarray:
    """Decode PNG/JPEG bytes to a float32 tensor of shape (224, 224, 3) in [0, 1]."""
    if not image_bytes:
        raise InvalidImage("image bytes are empty")
    try:
        with Image.open(io.BytesIO(image_bytes)) as img:
            rgb = img.convert("RGB").resize((IMAGE_SIZE, IMAGE_SIZE), Image.Resampling.BILINEAR)
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise InvalidImage(f"cannot decode image: {exc}") from exc
    return np.asarray(rgb, dtype=np.float32) / 255.0


def mean_rgb(tensor: np.ndarray) -> np.ndarray:
    """Mean color of a tensor as a float64 3-vector."""
    return tensor.reshape(-1, 3).mean(axis=0, dtype=np.float64)
