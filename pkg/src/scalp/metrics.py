"""Decomposition quality metrics: ASA, BR, CD, SRC, and PR curves."""

from dataclasses import dataclass
from math import gcd

import numpy as np
from scipy.ndimage import distance_transform_edt

from .contour_prior import boundary_map


def _check_dims(s, t):
    if s.shape != t.shape:
        raise ValueError(f"label map shapes differ: {s.shape} vs {t.shape}")


def asa(s: np.ndarray, t: np.ndarray) -> float:
    """Achievable segmentation accuracy: best-overlap mass of each segment."""
    s = np.asarray(s)
    t = np.asarray(t)
    _check_dims(s, t)
    nt = int(t.max()) + 1
    joint = np.bincount(s.ravel() * nt + t.ravel(),
                        minlength=(int(s.max()) + 1) * nt).reshape(-1, nt)
    return float(joint.max(axis=1).sum() / s.size)


def _match_fraction(src: np.ndarray, ref: np.ndarray, epsilon: float) -> float:
    """Fraction of src boundary pixels strictly closer than epsilon to ref."""
    if not src.any():
        return 0.0
    if not ref.any():
        return 0.0
    dist = distance_transform_edt(~ref)
    return float((dist[src] < epsilon).mean())


def boundary_recall(s: np.ndarray, t: np.ndarray, epsilon: float = 2.0) -> float:
    """Fraction of ground-truth boundary pixels detected within epsilon."""
    s = np.asarray(s)
    t = np.asarray(t)
    _check_dims(s, t)
    bt = boundary_map(t)
    if not bt.any():
        return 1.0
    return _match_fraction(bt, boundary_map(s), epsilon)


def contour_density(s: np.ndarray) -> float:
    """Decomposition boundary pixels divided by image size."""
    s = np.asarray(s)
    return float(boundary_map(s).sum() / s.size)


# --------------------------------------------------------------------------
# shape regularity
# --------------------------------------------------------------------------

def _perimeter(mask: np.ndarray) -> int:
    """Number of exposed 4-edges of a pixel set."""
    area = int(mask.sum())
    adj = int((mask[:-1, :] & mask[1:, :]).sum()) \
        + int((mask[:, :-1] & mask[:, 1:]).sum())
    return 4 * area - 2 * adj


def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain hull of integer (x, y) points, CCW, exact arithmetic."""
    pts = np.unique(points, axis=0)
    if len(pts) <= 2:
        return pts
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def _segment_points(a, b) -> np.ndarray:
    g = gcd(abs(int(b[0] - a[0])), abs(int(b[1] - a[1])))
    if g == 0:
        return np.array([a])
    step = (np.asarray(b) - np.asarray(a)) // g
    return np.array([np.asarray(a) + k * step for k in range(g + 1)])


def hull_pixels(coords: np.ndarray) -> np.ndarray:
    """Pixels whose centers lie in the convex hull of the given pixel set.

    `coords` is (n, 2) integer (row, col). Uses exact integer half-plane
    tests, so convex discrete shapes rasterize back to themselves.
    """
    pts = np.stack([coords[:, 1], coords[:, 0]], axis=1)  # (x, y)
    hull = _convex_hull(pts)
    if len(hull) <= 2:
        seg = _segment_points(hull[0], hull[-1])
        return np.stack([seg[:, 1], seg[:, 0]], axis=1)
    x0, y0 = hull[:, 0].min(), hull[:, 1].min()
    x1, y1 = hull[:, 0].max(), hull[:, 1].max()
    xs, ys = np.meshgrid(np.arange(x0, x1 + 1), np.arange(y0, y1 + 1))
    inside = np.ones(xs.shape, dtype=bool)
    for i in range(len(hull)):
        ax, ay = hull[i]
        bx, by = hull[(i + 1) % len(hull)]
        inside &= (bx - ax) * (ys - ay) - (by - ay) * (xs - ax) >= 0
    return np.stack([ys[inside], xs[inside]], axis=1)


def _mask_of(coords: np.ndarray) -> np.ndarray:
    lo = coords.min(axis=0)
    span = coords.max(axis=0) - lo + 1
    mask = np.zeros(span, dtype=bool)
    mask[coords[:, 0] - lo[0], coords[:, 1] - lo[1]] = True
    return mask


def shape_regularity(s: np.ndarray) -> float:
    """Size-weighted hull-compactness ratio times spread balance (SRC)."""
    s = np.asarray(s)
    total = 0.0
    for k in np.unique(s):
        coords = np.argwhere(s == k)
        size = len(coords)
        if size == 1:
            total += 1.0 / s.size
            continue
        sy = np.sqrt(np.std(coords[:, 0]))
        sx = np.sqrt(np.std(coords[:, 1]))
        vxy = 1.0 if max(sx, sy) == 0 else min(sx, sy) / max(sx, sy)
        mask = _mask_of(coords)
        cc_s = _perimeter(mask) / size
        hp = hull_pixels(coords)
        cc_h = _perimeter(_mask_of(hp)) / len(hp)
        total += (size / s.size) * (cc_h / cc_s) * vxy
    return float(total)


# --------------------------------------------------------------------------
# precision-recall
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PRCurve:
    thresholds: np.ndarray
    precision: np.ndarray
    recall: np.ndarray
    f_measure: np.ndarray
    max_f: float

    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.precision.tolist(), self.recall.tolist()))


def pr_curve(avg_boundary: np.ndarray, gts, epsilon: float = 2.0) -> PRCurve:
    """Sweep thresholds over an averaged boundary-confidence map.

    At each threshold the binarized prediction is scored against every
    annotator with epsilon-tolerant matching; precision and recall are the
    per-annotator means and F is computed from those means.
    """
    avg = np.asarray(avg_boundary, dtype=np.float64)
    gts = list(gts)
    if not gts:
        raise ValueError("at least one ground truth is required")
    gt_bounds = [boundary_map(t) for t in gts]
    gt_dists = [distance_transform_edt(~b) for b in gt_bounds]
    thresholds = np.unique(avg[avg > 0])
    ps, rs, fs, ts = [], [], [], []
    for thr in thresholds:
        pred = avg >= thr
        if not pred.any():
            continue
        pred_dist = distance_transform_edt(~pred)
        p_vals, r_vals = [], []
        for b, dist in zip(gt_bounds, gt_dists):
            p_vals.append(float((dist[pred] < epsilon).mean()))
            r_vals.append(1.0 if not b.any()
                          else float((pred_dist[b] < epsilon).mean()))
        p = float(np.mean(p_vals))
        r = float(np.mean(r_vals))
        f = 0.0 if p + r == 0 else 2.0 * p * r / (p + r)
        ts.append(float(thr))
        ps.append(p)
        rs.append(r)
        fs.append(f)
    return PRCurve(thresholds=np.array(ts), precision=np.array(ps),
                   recall=np.array(rs), f_measure=np.array(fs),
                   max_f=float(max(fs, default=0.0)))


def evaluate(labels: np.ndarray, gts, epsilon: float = 2.0) -> dict:
    """Standard per-image report, averaged over all annotators."""
    gts = list(gts)
    return {
        "asa": float(np.mean([asa(labels, t) for t in gts])),
        "br": float(np.mean([boundary_recall(labels, t, epsilon) for t in gts])),
        "cd": contour_density(labels),
        "src": shape_regularity(labels),
        "n_superpixels": int(np.asarray(labels).max()) + 1,
    }
