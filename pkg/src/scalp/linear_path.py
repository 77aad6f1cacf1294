"""Straight-segment rasterization between a pixel and a barycenter pixel.

The path is the classic integer line walk along the driving axis with
round-half-up on the other axes, evaluated in exact integer arithmetic.
Ties (the exact 0.5 fraction) always round toward +infinity in the
canonical orientation, which starts at the lexicographically smaller
endpoint; the result is reversed if needed so paths are reproducible
bit-for-bit and reversed endpoints yield the same pixel set.
"""

import numpy as np


def _raster(a: tuple, b: tuple) -> np.ndarray:
    flip = a > b
    if flip:
        a, b = b, a
    delta = [e - s for s, e in zip(a, b)]
    steps = max(abs(d) for d in delta)
    den = max(steps, 1)
    pts = np.empty((steps + 1, len(a)), dtype=np.int64)
    for t in range(steps + 1):
        for axis, (s, d) in enumerate(zip(a, delta)):
            pts[t, axis] = s + (2 * t * d + den) // (2 * den)
    if flip:
        pts = pts[::-1].copy()
    return pts


def linear_path(start, end) -> np.ndarray:
    """Ordered (length, 2) pixel path from `start` to `end`, inclusive.

    Coordinates are (row, col). Consecutive pixels are 8-adjacent and the
    length equals the Chebyshev distance between the endpoints plus one.
    """
    a = (int(start[0]), int(start[1]))
    b = (int(end[0]), int(end[1]))
    return _raster(a, b)


def linear_path_3d(start, end) -> np.ndarray:
    """3-D analogue of linear_path; consecutive voxels are 26-adjacent."""
    a = (int(start[0]), int(start[1]), int(start[2]))
    b = (int(end[0]), int(end[1]), int(end[2]))
    return _raster(a, b)
