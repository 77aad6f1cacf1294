import numpy as np
import pytest

import scalp


@pytest.fixture(autouse=True)
def _reset_backend():
    yield
    scalp.set_backend(None)


def two_region_rgb(size: int = 100, split: int | None = None) -> np.ndarray:
    """Flat two-color uint8 image split vertically."""
    split = size // 2 if split is None else split
    rgb = np.zeros((size, size, 3), dtype=np.uint8)
    rgb[:, :split] = (40, 90, 200)
    rgb[:, split:] = (220, 150, 30)
    return rgb


def two_region_gt(size: int = 100, split: int | None = None) -> np.ndarray:
    split = size // 2 if split is None else split
    gt = np.zeros((size, size), dtype=np.int64)
    gt[:, split:] = 1
    return gt


def two_region_lab(size: int = 100) -> np.ndarray:
    return scalp.rgb_to_lab(two_region_rgb(size))


def random_voronoi(shape: tuple, k: int, seed: int) -> np.ndarray:
    """Nearest-seed label map; every label 0..k'-1 present and 4-connected."""
    rng = np.random.default_rng(seed)
    coords = np.indices(shape).reshape(2, -1).T
    seeds = np.stack([rng.integers(0, shape[0], k),
                      rng.integers(0, shape[1], k)], axis=1)
    d2 = ((coords[:, None, :] - seeds[None, :, :]) ** 2).sum(axis=2)
    labels = d2.argmin(axis=1).reshape(shape)
    return scalp.enforce_connectivity(labels)


def random_lab(shape: tuple, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    lab = np.empty(shape + (3,))
    lab[..., 0] = rng.uniform(0, 100, shape)
    lab[..., 1:] = rng.uniform(-60, 60, shape + (2,))
    return lab


def nested_loop_ucm(size: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Hierarchical map with an outer 0.7 loop and an inner 0.3 loop.

    Returns (ucm, regions_at_0.4): at threshold 0.4 only the outer loop
    survives, separating the image into exactly two regions (outside and
    inside), with the inner loop suppressed. Curve pixels get absorbed by
    the outside region: the interior/exterior votes tie and the lower
    region label wins.
    """
    ucm = np.zeros((size, size))
    a, b = size // 6, size - size // 6 - 1
    ucm[a, a:b + 1] = ucm[b, a:b + 1] = 0.7
    ucm[a:b + 1, a] = ucm[a:b + 1, b] = 0.7
    c, d = size // 3, size - size // 3 - 1
    ucm[c, c:d + 1] = ucm[d, c:d + 1] = 0.3
    ucm[c:d + 1, c] = ucm[c:d + 1, d] = 0.3
    regions = np.zeros((size, size), dtype=np.int64)
    regions[a + 1:b, a + 1:b] = 1
    return ucm, regions
