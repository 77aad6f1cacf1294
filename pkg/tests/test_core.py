import numpy as np
import pytest
from skimage import color as skcolor

from scalp import ScalpParams, add_gaussian_noise, is_partition, lab_to_rgb, rgb_to_lab


def _rgb_lattice(step: int = 16) -> np.ndarray:
    vals = np.arange(0, 256, step, dtype=np.uint8)
    r, g, b = np.meshgrid(vals, vals, vals, indexing="ij")
    return np.stack([r, g, b], axis=-1).reshape(1, -1, 3)


def test_rgb_to_lab_matches_reference_library():
    rgb = _rgb_lattice()
    got = rgb_to_lab(rgb)
    want = skcolor.rgb2lab(rgb.astype(np.float64) / 255.0)
    # the reference library rounds the sRGB matrix slightly differently
    assert np.allclose(got, want, atol=1e-2)


def test_lab_to_rgb_matches_reference_library():
    lab = rgb_to_lab(_rgb_lattice())
    got = lab_to_rgb(lab)
    want = np.clip(np.round(skcolor.lab2rgb(lab) * 255.0), 0, 255)
    assert np.abs(got.astype(int) - want.astype(int)).max() <= 1


def test_lab_round_trip_within_one_level():
    rgb = _rgb_lattice()
    back = lab_to_rgb(rgb_to_lab(rgb))
    assert np.abs(back.astype(int) - rgb.astype(int)).max() <= 1


def test_lab_reference_values():
    # white, black, and pure red as 1x1 images
    assert np.allclose(rgb_to_lab(np.full((1, 1, 3), 255, np.uint8)),
                       [[[100.0, 0.0, 0.0]]], atol=2e-2)
    assert np.allclose(rgb_to_lab(np.zeros((1, 1, 3), np.uint8)),
                       [[[0.0, 0.0, 0.0]]], atol=1e-9)
    red = rgb_to_lab(np.array([[[255, 0, 0]]], np.uint8))[0, 0]
    assert np.allclose(red, [53.24, 80.09, 67.20], atol=0.05)


def test_noise_deterministic_per_seed():
    rgb = np.full((32, 32, 3), 128, np.uint8)
    a = add_gaussian_noise(rgb, 20.0, seed=7)
    b = add_gaussian_noise(rgb, 20.0, seed=7)
    c = add_gaussian_noise(rgb, 20.0, seed=8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_noise_variance_close_to_requested():
    rgb = np.full((200, 200, 3), 128, np.uint8)
    noisy = add_gaussian_noise(rgb, 20.0, seed=0).astype(np.float64)
    var = np.var(noisy - 128.0)
    # rounding to integers adds 1/12 of quantization variance
    assert abs(var - 20.0) / 20.0 < 0.1


def test_noise_zero_variance_is_identity_copy():
    rgb = np.full((4, 4, 3), 10, np.uint8)
    out = add_gaussian_noise(rgb, 0.0, seed=0)
    assert np.array_equal(out, rgb)
    assert out is not rgb


def test_noise_rejects_negative_variance():
    with pytest.raises(ValueError):
        add_gaussian_noise(np.zeros((2, 2, 3), np.uint8), -1.0, seed=0)


def test_params_defaults():
    p = ScalpParams(K=200)
    assert (p.m2_scale, p.lam, p.gamma, p.n, p.sigma, p.iterations) == \
        (0.075, 0.5, 50.0, 3, 40.0, 5)


@pytest.mark.parametrize("kw", [
    {"K": 0}, {"K": 10, "lam": -0.1}, {"K": 10, "lam": 1.5},
    {"K": 10, "gamma": -1}, {"K": 10, "n": -1}, {"K": 10, "sigma": 0},
    {"K": 10, "iterations": 0},
])
def test_params_validation(kw):
    with pytest.raises(ValueError):
        ScalpParams(**kw)


def test_is_partition():
    assert is_partition(np.array([[0, 1], [2, 0]]))
    assert not is_partition(np.array([[0, 2], [2, 0]]))  # gap at 1
    assert not is_partition(np.array([[-1, 0]]))
    assert not is_partition(np.zeros((0, 0), dtype=int))
