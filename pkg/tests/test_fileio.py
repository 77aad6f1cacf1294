import numpy as np
import pytest
from PIL import Image

from scalp import fileio


def test_png_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    rgb = rng.integers(0, 256, (9, 11, 3)).astype(np.uint8)
    path = tmp_path / "img.png"
    fileio.save_image(path, rgb)
    assert np.array_equal(fileio.load_image(path), rgb)


def test_ppm_binary_parsing(tmp_path):
    rgb = np.arange(2 * 3 * 3, dtype=np.uint8).reshape(2, 3, 3)
    path = tmp_path / "img.ppm"
    with open(path, "wb") as f:
        f.write(b"P6\n# a comment\n3 2\n255\n")
        f.write(rgb.tobytes())
    assert np.array_equal(fileio.load_image(path), rgb)


def test_pgm_ascii_parsing(tmp_path):
    path = tmp_path / "img.pgm"
    path.write_text("P2\n# comment\n3 2\n255\n0 128 255\n10 20 30\n")
    gray = fileio.load_gray(path)
    assert gray.shape == (2, 3)
    assert gray[0, 2] == 1.0
    assert abs(gray[0, 1] - 128 / 255) < 1e-12


def test_pgm16_round_trip(tmp_path):
    arr = np.array([[0, 1, 32768], [65535, 7, 300]], dtype=np.uint16)
    path = tmp_path / "map.pgm"
    fileio.save_pgm16(path, arr)
    back = np.round(fileio.load_gray(path) * 65535).astype(np.uint16)
    assert np.array_equal(back, arr)


def test_pgm16_range_check(tmp_path):
    with pytest.raises(ValueError):
        fileio.save_pgm16(tmp_path / "x.pgm", np.array([[70000]]))


def test_labels_pgm_round_trip(tmp_path):
    labels = np.arange(30, dtype=np.int64).reshape(5, 6) % 7
    path = tmp_path / "lab.pgm"
    fileio.save_labels(path, labels)
    assert np.array_equal(fileio.load_labels(path), labels)


def test_labels_csv_round_trip(tmp_path):
    labels = np.arange(20, dtype=np.int64).reshape(4, 5)
    path = tmp_path / "lab.csv"
    fileio.save_labels(path, labels)
    assert np.array_equal(fileio.load_labels(path), labels)


def test_labels_unknown_suffix(tmp_path):
    with pytest.raises(ValueError):
        fileio.save_labels(tmp_path / "lab.xyz", np.zeros((2, 2), dtype=int))


def test_gray_16bit_png(tmp_path):
    arr = np.array([[0, 32768], [65535, 1000]], dtype=np.uint16)
    path = tmp_path / "g.png"
    Image.fromarray(arr).save(path)  # 16-bit grayscale
    gray = fileio.load_gray(path)
    assert gray[1, 0] == 1.0
    assert abs(gray[0, 1] - 32768 / 65535) < 1e-12


def test_volume_round_trip(tmp_path):
    rng = np.random.default_rng(1)
    vol = rng.uniform(0, 100, (3, 4, 5, 2))
    path = tmp_path / "vol.json"
    fileio.save_volume(path, vol)
    assert np.array_equal(fileio.load_volume(path), vol)


def test_volume_single_channel(tmp_path):
    vol = np.arange(24, dtype=np.float32).reshape(2, 3, 4)
    path = tmp_path / "vol.json"
    fileio.save_volume(path, vol)
    back = fileio.load_volume(path)
    assert back.shape == (2, 3, 4)
    assert np.array_equal(back, vol)


def test_labels_3d_round_trip(tmp_path):
    labels = np.arange(27, dtype=np.int64).reshape(3, 3, 3)
    path = tmp_path / "lab.json"
    fileio.save_labels_3d(path, labels)
    back = fileio.load_labels_3d(path)
    assert back.dtype == np.int64
    assert np.array_equal(back, labels)


def test_overlay_paints_boundaries(tmp_path):
    rgb = np.zeros((6, 6, 3), dtype=np.uint8)
    labels = np.zeros((6, 6), dtype=int)
    labels[:, 3:] = 1
    path = tmp_path / "ov.png"
    fileio.save_overlay(path, rgb, labels)
    out = fileio.load_image(path)
    assert (out[:, 2:4] == (255, 0, 0)).all()
    assert (out[:, :2] == 0).all()


def test_bad_magic(tmp_path):
    path = tmp_path / "bad.pgm"
    path.write_bytes(b"P9\n1 1\n255\n\x00")
    with pytest.raises(ValueError):
        fileio.load_gray(path)
