import numpy as np
import pytest

from scalp import linear_path, linear_path_3d


def chebyshev(a, b) -> int:
    return int(np.abs(np.asarray(a) - np.asarray(b)).max())


def check_path(path: np.ndarray, a, b) -> None:
    assert path.dtype == np.int64
    assert tuple(path[0]) == tuple(a)
    assert tuple(path[-1]) == tuple(b)
    assert len(path) == chebyshev(a, b) + 1
    if len(path) > 1:
        steps = np.abs(np.diff(path, axis=0))
        assert steps.max() <= 1  # consecutive pixels are 8/26-adjacent
        assert (steps.max(axis=1) == 1).all()  # no repeated pixels
    # interior pixels touch exactly two path pixels (the path never folds
    # back next to itself)
    pset = {tuple(p) for p in path}
    assert len(pset) == len(path)
    for i in range(1, len(path) - 1):
        adj = sum(1 for q in path if 0 < chebyshev(path[i], q) <= 1)
        assert adj == 2


def float_dda_oracle(a, b) -> np.ndarray:
    """Independent float stepping with round-half-up, canonical orientation."""
    a, b = (a, b) if tuple(a) <= tuple(b) else (b, a)
    steps = chebyshev(a, b)
    pts = []
    for t in range(steps + 1):
        frac = t / max(steps, 1)
        pts.append([int(np.floor(s + (e - s) * frac + 0.5))
                    for s, e in zip(a, b)])
    return np.array(pts, dtype=np.int64)


@pytest.mark.parametrize("seed", range(4))
def test_random_pairs_match_float_oracle(seed):
    rng = np.random.default_rng(seed)
    for _ in range(200):
        a = tuple(rng.integers(0, 40, 2))
        b = tuple(rng.integers(0, 40, 2))
        path = linear_path(a, b)
        check_path(path, a, b)
        want = float_dda_oracle(a, b)
        got = path if tuple(a) <= tuple(b) else path[::-1]
        assert np.array_equal(got, want)


def test_reversal_yields_same_pixel_set_and_order():
    rng = np.random.default_rng(3)
    for _ in range(300):
        a = tuple(rng.integers(0, 30, 2))
        b = tuple(rng.integers(0, 30, 2))
        assert np.array_equal(linear_path(a, b), linear_path(b, a)[::-1])


def test_degenerate_and_axis_aligned():
    assert np.array_equal(linear_path((5, 5), (5, 5)), [[5, 5]])
    assert np.array_equal(linear_path((2, 1), (2, 4)),
                          [[2, 1], [2, 2], [2, 3], [2, 4]])
    assert np.array_equal(linear_path((4, 7), (1, 7)),
                          [[4, 7], [3, 7], [2, 7], [1, 7]])
    assert np.array_equal(linear_path((0, 0), (3, 3)),
                          [[0, 0], [1, 1], [2, 2], [3, 3]])


def test_tie_break_is_deterministic():
    # one exact-half step; both orientations agree on the pixel set
    p = linear_path((0, 0), (1, 2))
    assert np.array_equal(p, [[0, 0], [1, 1], [1, 2]])
    assert np.array_equal(linear_path((1, 2), (0, 0)), p[::-1])


def test_3d_spot_checks():
    rng = np.random.default_rng(0)
    for _ in range(300):
        a = tuple(rng.integers(0, 8, 3))
        b = tuple(rng.integers(0, 8, 3))
        path = linear_path_3d(a, b)
        check_path(path, a, b)
        assert np.array_equal(path, linear_path_3d(b, a)[::-1])


def test_3d_matches_float_oracle():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a = tuple(rng.integers(0, 8, 3))
        b = tuple(rng.integers(0, 8, 3))
        want = float_dda_oracle(a, b)
        got = linear_path_3d(a, b)
        if tuple(a) > tuple(b):
            got = got[::-1]
        assert np.array_equal(got, want)


def test_suffix_consistency_within_one_pixel():
    """Paths re-anchored at an on-path pixel stay within Chebyshev distance
    one of the parent path (discrete stand-in for star-convexity)."""
    b = (7, 9)
    for ay in range(16):
        for ax in range(16):
            parent = linear_path((ay, ax), b)
            pset = parent[:, None, :]
            for q in parent:
                sub = linear_path(tuple(q), b)
                dev = np.abs(sub[None, :, :] - pset).max(axis=2).min(axis=0)
                assert dev.max() <= 1
