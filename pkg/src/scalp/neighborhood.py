"""Per-pixel weighted neighborhood moments and the O(1) color distance.

The squared color distance between a pixel's (2n+1)^2 neighborhood and a
cluster color expands into terms that depend only on the image: the
weighted mean of features and of squared features. Both are precomputed
once, after which each distance evaluation costs a constant number of
operations regardless of n.
"""

from dataclasses import dataclass

import numpy as np

from . import _accel


@dataclass(frozen=True)
class MomentImages:
    """Precomputed weighted window moments (same shape as the image)."""

    f1: np.ndarray  # weighted neighborhood mean of features
    f2: np.ndarray  # weighted neighborhood mean of squared features
    n: int
    sigma: float


def precompute_moments(image: np.ndarray, n: int, sigma: float) -> MomentImages:
    """Compute the moment images for a (H, W, C) or (D, H, W, C) image.

    Window weights are exp(-|F_p - F_q|^2 / (2 sigma^2)), normalized to sum
    to one over the in-bounds part of each window.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    image = np.asarray(image, dtype=np.float64)
    squeeze = image.ndim == 3
    vol = image[None] if squeeze else image
    f1, f2 = _accel.kernels().moments(np.ascontiguousarray(vol), n, float(sigma))
    if squeeze:
        f1, f2 = f1[0], f2[0]
    return MomentImages(f1=f1, f2=f2, n=n, sigma=float(sigma))


def color_distance_o1(moments: MomentImages, p, cluster_feature) -> float:
    """Neighborhood color distance between pixel `p` and a cluster color.

    Constant-time: reads the two moment vectors at p and combines them with
    the cluster feature, independently of the neighborhood radius.
    """
    idx = tuple(int(v) for v in p)
    f1 = moments.f1[idx]
    f2 = moments.f2[idx]
    fk = np.asarray(cluster_feature, dtype=np.float64)
    return float(np.sum(f2 + fk * fk - 2.0 * fk * f1))


def point_distance_field(moments: MomentImages, cluster_feature) -> np.ndarray:
    """color_distance_o1 evaluated at every pixel, as one array."""
    fk = np.asarray(cluster_feature, dtype=np.float64)
    return moments.f2.sum(axis=-1) + float(fk @ fk) - 2.0 * (moments.f1 @ fk)
