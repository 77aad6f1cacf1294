import numpy as np
import pytest

import scalp
from scalp import MomentImages, color_distance_o1, point_distance_field, precompute_moments

from conftest import random_lab


def direct_window_distance(image: np.ndarray, p, feat, n: int,
                           sigma: float) -> float:
    """Quadratic-time oracle: explicit weighted window sum around p."""
    h, w = image.shape[:2]
    fp = image[p]
    num = 0.0
    den = 0.0
    for dy in range(-n, n + 1):
        for dx in range(-n, n + 1):
            y, x = p[0] + dy, p[1] + dx
            if not (0 <= y < h and 0 <= x < w):
                continue
            fq = image[y, x]
            wgt = np.exp(-np.sum((fp - fq) ** 2) / (2.0 * sigma ** 2))
            num += wgt * np.sum((fq - feat) ** 2)
            den += wgt
    return num / den


def direct_moments(image: np.ndarray, n: int, sigma: float):
    h, w = image.shape[:2]
    f1 = np.zeros_like(image)
    f2 = np.zeros_like(image)
    for y in range(h):
        for x in range(w):
            fp = image[y, x]
            den = 0.0
            for dy in range(-n, n + 1):
                for dx in range(-n, n + 1):
                    yy, xx = y + dy, x + dx
                    if not (0 <= yy < h and 0 <= xx < w):
                        continue
                    fq = image[yy, xx]
                    wgt = np.exp(-np.sum((fp - fq) ** 2) / (2.0 * sigma ** 2))
                    f1[y, x] += wgt * fq
                    f2[y, x] += wgt * fq * fq
                    den += wgt
            f1[y, x] /= den
            f2[y, x] /= den
    return f1, f2


@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_moments_match_brute_force(backend):
    scalp.set_backend(backend)
    img = random_lab((11, 13), seed=0)
    mom = precompute_moments(img, 2, 25.0)
    f1, f2 = direct_moments(img, 2, 25.0)
    assert np.allclose(mom.f1, f1, atol=1e-9)
    assert np.allclose(mom.f2, f2, atol=1e-9)


def test_o1_distance_matches_window_oracle():
    rng = np.random.default_rng(2)
    img = random_lab((16, 18), seed=2)
    mom = precompute_moments(img, 3, 40.0)
    for _ in range(300):
        p = (int(rng.integers(16)), int(rng.integers(18)))
        feat = np.array([rng.uniform(0, 100), rng.uniform(-60, 60),
                         rng.uniform(-60, 60)])
        want = direct_window_distance(img, p, feat, 3, 40.0)
        got = color_distance_o1(mom, p, feat)
        assert abs(got - want) < 1e-9


def test_n_zero_degenerates_to_pixel_feature():
    img = random_lab((7, 9), seed=4)
    mom = precompute_moments(img, 0, 40.0)
    assert np.array_equal(mom.f1, img)
    assert np.array_equal(mom.f2, img * img)


def test_second_moment_dominates_first_squared():
    # weighted Jensen inequality per channel
    img = random_lab((15, 15), seed=5)
    for n in (1, 3, 5):
        mom = precompute_moments(img, n, 40.0)
        assert (mom.f2 - mom.f1 ** 2 >= -1e-9).all()


def test_distance_nonnegative_and_zero_at_window_mean():
    img = np.full((9, 9, 3), 37.5)
    mom = precompute_moments(img, 3, 40.0)
    assert abs(color_distance_o1(mom, (4, 4), img[4, 4])) < 1e-9
    rng = np.random.default_rng(6)
    img = random_lab((9, 9), seed=6)
    mom = precompute_moments(img, 2, 40.0)
    for _ in range(200):
        p = (int(rng.integers(9)), int(rng.integers(9)))
        feat = np.array([rng.uniform(0, 100), rng.uniform(-60, 60),
                         rng.uniform(-60, 60)])
        assert color_distance_o1(mom, p, feat) >= -1e-9


def test_point_distance_field_matches_scalar_calls():
    img = random_lab((8, 10), seed=7)
    mom = precompute_moments(img, 2, 40.0)
    feat = np.array([50.0, 10.0, -20.0])
    field = point_distance_field(mom, feat)
    for p in ((0, 0), (3, 7), (7, 9)):
        assert abs(field[p] - color_distance_o1(mom, p, feat)) < 1e-9


def test_3d_moments_reduce_to_2d_on_depth_one():
    img = random_lab((10, 12), seed=8)
    m2 = precompute_moments(img, 2, 40.0)
    m3 = precompute_moments(img[None], 2, 40.0)
    assert np.allclose(m3.f1[0], m2.f1, atol=1e-12)
    assert np.allclose(m3.f2[0], m2.f2, atol=1e-12)


def test_invalid_arguments():
    img = random_lab((4, 4), seed=9)
    with pytest.raises(ValueError):
        precompute_moments(img, -1, 40.0)
    with pytest.raises(ValueError):
        precompute_moments(img, 2, 0.0)


def test_moment_images_is_frozen():
    img = random_lab((4, 4), seed=10)
    mom = precompute_moments(img, 1, 40.0)
    assert isinstance(mom, MomentImages)
    with pytest.raises(AttributeError):
        mom.n = 5
