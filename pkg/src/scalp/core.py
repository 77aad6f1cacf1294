"""Shared domain types, sRGB<->CIELab conversion, and synthetic noise.

Images are plain numpy arrays: uint8 (H, W, 3) for RGB, float64 (H, W, 3)
for CIELab, float64 (H, W) in [0, 1] for contour maps, and int (H, W) or
(D, H, W) for label maps.
"""

from dataclasses import dataclass, replace

import numpy as np

# sRGB primaries, D65 white point.
_RGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])
_XYZ_TO_RGB = np.linalg.inv(_RGB_TO_XYZ)
_WHITE = np.array([0.95047, 1.0, 1.08883])
_DELTA = 6.0 / 29.0


@dataclass(frozen=True)
class ScalpParams:
    """Decomposition parameter bundle.

    m2_scale applies the regularity trade-off as m^2 = m2_scale * r^2, so
    the spatial term in the clustering distance is d_s * m2_scale.
    """

    K: int
    m2_scale: float = 0.075
    lam: float = 0.5
    gamma: float = 50.0
    n: int = 3
    sigma: float = 40.0
    iterations: int = 5
    rng_seed: int = 0

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("K must be >= 1")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lambda must lie in [0, 1]")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.n < 0:
            raise ValueError("neighborhood radius n must be >= 0")
        if self.sigma <= 0:
            raise ValueError("sigma must be > 0")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")

    def with_(self, **kw) -> "ScalpParams":
        return replace(self, **kw)


def rgb_to_lab(rgb: np.ndarray) -> np.ndarray:
    """Convert an 8-bit RGB image to CIELab (sRGB primaries, D65 white)."""
    srgb = np.asarray(rgb, dtype=np.float64) / 255.0
    lin = np.where(srgb <= 0.04045, srgb / 12.92,
                   ((srgb + 0.055) / 1.055) ** 2.4)
    xyz = lin @ _RGB_TO_XYZ.T
    t = xyz / _WHITE
    f = np.where(t > _DELTA ** 3, np.cbrt(t), t / (3 * _DELTA ** 2) + 4.0 / 29.0)
    lab = np.empty_like(xyz)
    lab[..., 0] = 116.0 * f[..., 1] - 16.0
    lab[..., 1] = 500.0 * (f[..., 0] - f[..., 1])
    lab[..., 2] = 200.0 * (f[..., 1] - f[..., 2])
    return lab


def lab_to_rgb(lab: np.ndarray) -> np.ndarray:
    """Inverse of rgb_to_lab, clamped back to 8-bit."""
    lab = np.asarray(lab, dtype=np.float64)
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    f = np.stack([fx, fy, fz], axis=-1)
    t = np.where(f > _DELTA, f ** 3, 3 * _DELTA ** 2 * (f - 4.0 / 29.0))
    xyz = t * _WHITE
    lin = xyz @ _XYZ_TO_RGB.T
    srgb = np.where(lin <= 0.0031308, 12.92 * lin,
                    1.055 * np.clip(lin, 0, None) ** (1 / 2.4) - 0.055)
    return np.clip(np.round(srgb * 255.0), 0, 255).astype(np.uint8)


def add_gaussian_noise(rgb: np.ndarray, variance: float, seed: int) -> np.ndarray:
    """Additive white Gaussian noise on the 0-255 scale, clamped to 8 bits."""
    if variance < 0:
        raise ValueError("variance must be >= 0")
    rgb = np.asarray(rgb)
    if variance == 0:
        return rgb.copy()
    rng = np.random.default_rng(seed)
    noisy = rgb.astype(np.float64) + rng.normal(0.0, np.sqrt(variance), rgb.shape)
    return np.clip(np.round(noisy), 0, 255).astype(np.uint8)


def validate_contour(contour: np.ndarray, shape: tuple) -> np.ndarray:
    contour = np.asarray(contour, dtype=np.float64)
    if contour.shape != tuple(shape):
        raise ValueError(f"contour map shape {contour.shape} does not match "
                         f"image shape {tuple(shape)}")
    if contour.min() < 0.0 or contour.max() > 1.0:
        raise ValueError("contour values must lie in [0, 1]")
    return contour


def is_partition(labels: np.ndarray) -> bool:
    """True when labels are the contiguous range 0..K-1 with every cell set."""
    labels = np.asarray(labels)
    if labels.size == 0 or labels.min() < 0:
        return False
    return np.array_equal(np.unique(labels), np.arange(labels.max() + 1))
