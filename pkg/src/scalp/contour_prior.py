"""Contour prior maps: loading detector outputs and the multi-scale prior.

The built-in prior needs no external detector: decompositions at several
scales are computed without any contour term, their boundary indicator maps
are averaged, and low-confidence values are zeroed by a threshold.
"""

import numpy as np

from .clustering import run_scalp
from .core import ScalpParams
from .fileio import load_gray

DEFAULT_SCALES = (25, 50, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000)


def boundary_map(labels: np.ndarray) -> np.ndarray:
    """Boolean map of pixels with at least one 4-neighbor of another label."""
    labels = np.asarray(labels)
    out = np.zeros(labels.shape, dtype=bool)
    out[:-1, :] |= labels[:-1, :] != labels[1:, :]
    out[1:, :] |= labels[1:, :] != labels[:-1, :]
    out[:, :-1] |= labels[:, :-1] != labels[:, 1:]
    out[:, 1:] |= labels[:, 1:] != labels[:, :-1]
    return out


def multiscale_boundary_average(image: np.ndarray, scales,
                                params: ScalpParams) -> np.ndarray:
    """Mean of boundary indicators over one decomposition per scale."""
    scales = list(scales)
    if not scales:
        raise ValueError("scales must be nonempty")
    acc = np.zeros(image.shape[:2])
    for k in scales:
        sp = params.with_(K=int(k), gamma=0.0)
        acc += boundary_map(run_scalp(image, sp))
    return acc / len(scales)


def multiscale_boundary_prior(image: np.ndarray, scales,
                              params: ScalpParams,
                              threshold: float = 0.5) -> np.ndarray:
    """Thresholded multi-scale boundary average, usable as a contour prior."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    avg = multiscale_boundary_average(image, scales, params)
    avg[avg < threshold] = 0.0
    return avg


def load_contour_map(path, shape: tuple | None = None) -> np.ndarray:
    """Load a grayscale contour file, normalized to [0, 1]."""
    contour = load_gray(path)
    if shape is not None and contour.shape != tuple(shape):
        raise ValueError(f"contour map shape {contour.shape} does not match "
                         f"expected {tuple(shape)}")
    return contour
