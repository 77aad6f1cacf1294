"""Iterative windowed clustering with linear-path color and contour terms.

The decomposition starts from a regular grid of blocks, then alternates
assignment passes (each cluster scans a (2r+1)^2 window around its
barycenter and claims pixels by arg-min distance) with cluster updates
(plain means of member features and coordinates). The distance combines
the O(1) neighborhood color distance at the pixel and along the rasterized
path to the barycenter, a squared spatial term scaled by m2_scale, and a
multiplicative weight from the maximum contour intensity on the path.

Everything internal runs on 4-D volumes (depth, height, width, channels);
2-D images are depth-1 volumes, which keeps the 2-D and 3-D engines
identical by construction.
"""

from dataclasses import dataclass

import numpy as np
from skimage.measure import label as _cc_label

from . import _accel
from .core import ScalpParams, validate_contour
from .linear_path import linear_path, linear_path_3d
from .neighborhood import MomentImages, color_distance_o1

_DUMMY_F = np.zeros((1, 1, 1))
_DUMMY_I = np.zeros((1, 1, 1), dtype=np.int64)


@dataclass(frozen=True)
class ClusterState:
    mean_feature: np.ndarray
    barycenter: np.ndarray  # (row, col) or (depth, row, col), continuous
    population: int


@dataclass
class DecompositionState:
    """Engine state after the final pass.

    `labels` is the finished map (connectivity enforced, ids compacted);
    `raw_labels` and `best_distance` reflect the last assignment pass and
    index the original cluster ids. `pass_features`/`pass_barycenters` are
    the cluster values the last pass measured distances against, while
    `features`/`barycenters`/`counts` are recomputed from `raw_labels`.
    """

    labels: np.ndarray
    raw_labels: np.ndarray
    best_distance: np.ndarray
    features: np.ndarray
    barycenters: np.ndarray
    counts: np.ndarray
    pass_features: np.ndarray
    pass_barycenters: np.ndarray
    r: float

    def clusters(self) -> list[ClusterState]:
        return [ClusterState(self.features[k], self.barycenters[k],
                             int(self.counts[k]))
                for k in range(len(self.counts))]


def spatial_distance(p, barycenter) -> float:
    """Squared Euclidean distance between a pixel and a barycenter."""
    p = np.asarray(p, dtype=np.float64)
    b = np.asarray(barycenter, dtype=np.float64)
    return float(((p - b) ** 2).sum())


def path_color_distance(p, cluster, path, moments: MomentImages,
                        lam: float) -> float:
    """Blend of the pixel color distance and its mean along the path."""
    feat = cluster.mean_feature if isinstance(cluster, ClusterState) else cluster
    d_p = color_distance_o1(moments, p, feat)
    if lam == 1.0:
        return d_p
    d_path = np.mean([color_distance_o1(moments, q, feat) for q in path])
    return lam * d_p + (1.0 - lam) * float(d_path)


class PathDistanceMemo:
    """Optional cache of path color-distance sums, keyed by pixel.

    When a path walk reaches a pixel whose own sum is already cached, the
    remainder is reused instead of rewalked. The reuse is a slight
    approximation: the cached pixel's own path can deviate from the parent
    path's suffix by one pixel. A memo instance is only valid for a single
    cluster within a single assignment pass.
    """

    def __init__(self):
        self._sums: dict[tuple, tuple[float, int]] = {}

    def __len__(self) -> int:
        return len(self._sums)


def _path_sum(path, feat, moments: MomentImages,
              memo: PathDistanceMemo | None) -> tuple[float, int]:
    if memo is None:
        total = sum(color_distance_o1(moments, q, feat) for q in path)
        return float(total), len(path)
    prefix = 0.0
    total, length = None, None
    for i, q in enumerate(path):
        key = tuple(int(v) for v in q)
        if i and key in memo._sums:
            s, l = memo._sums[key]
            total, length = prefix + s, i + l
            break
        prefix += color_distance_o1(moments, q, feat)
    if total is None:
        total, length = prefix, len(path)
    memo._sums[tuple(int(v) for v in path[0])] = (total, length)
    return float(total), length


def path_color_distance_memo(p, cluster, moments: MomentImages, lam: float,
                             memo: PathDistanceMemo | None = None) -> float:
    """path_color_distance with the path derived from the cluster barycenter.

    Without a memo this is the exact mode; passing a PathDistanceMemo turns
    on suffix reuse across pixels of the same cluster (approximate mode).
    """
    feat = cluster.mean_feature if isinstance(cluster, ClusterState) else cluster
    # round half up, matching the kernels' barycenter pixel
    bary = np.floor(np.asarray(cluster.barycenter, dtype=np.float64) + 0.5)
    path_fn = linear_path if len(bary) == 2 else linear_path_3d
    path = path_fn(p, bary.astype(np.int64))
    d_p = color_distance_o1(moments, p, feat)
    if lam == 1.0:
        return d_p
    total, length = _path_sum(path, feat, moments, memo)
    return lam * d_p + (1.0 - lam) * total / length


def contour_weight(path, contour: np.ndarray, gamma: float) -> float:
    """1 + gamma * (maximum contour intensity over the path pixels)."""
    path = np.asarray(path)
    vals = contour[tuple(path[:, a] for a in range(path.shape[1]))]
    return 1.0 + gamma * float(vals.max())


def total_distance(p, cluster, path, moments: MomentImages,
                   contour: np.ndarray | None, params: ScalpParams) -> float:
    """Full clustering distance between pixel `p` and one cluster."""
    d_col = path_color_distance(p, cluster, path, moments, params.lam)
    d_s = spatial_distance(p, cluster.barycenter)
    total = d_col + d_s * params.m2_scale
    if contour is not None and params.gamma > 0:
        total *= contour_weight(path, contour, params.gamma)
    return total


# ---------------------------------------------------------------------------
# grid initialization
# ---------------------------------------------------------------------------

def _grid_labels(dims: tuple[int, ...], k: int) -> tuple[np.ndarray, float]:
    """Regular block grid over `dims`; returns (labels, step r)."""
    n_total = int(np.prod(dims))
    if not 1 <= k <= n_total:
        raise ValueError(f"K={k} out of range for {n_total} elements")
    active = sum(1 for s in dims if s > 1)
    r = (n_total / k) ** (1.0 / max(active, 1))
    nblocks = [max(1, int(np.floor(s / r + 0.5))) if s > 1 else 1 for s in dims]
    axes = [(np.arange(s, dtype=np.int64) * nb) // s
            for s, nb in zip(dims, nblocks)]
    labels = np.zeros(dims, dtype=np.int64)
    stride = 1
    for axis in range(len(dims) - 1, -1, -1):
        shape = [1] * len(dims)
        shape[axis] = dims[axis]
        labels += axes[axis].reshape(shape) * stride
        stride *= nblocks[axis]
    return labels, r


def _update_clusters(vol: np.ndarray, labels: np.ndarray, k: int,
                     coords: np.ndarray):
    flat = labels.ravel()
    counts = np.bincount(flat, minlength=k)
    c = vol.shape[-1]
    feats = np.zeros((k, c))
    for ch in range(c):
        feats[:, ch] = np.bincount(flat, weights=vol[..., ch].ravel(),
                                   minlength=k)
    barys = np.zeros((k, 3))
    for a in range(3):
        barys[:, a] = np.bincount(flat, weights=coords[a].ravel(),
                                  minlength=k)
    live = counts > 0
    feats[live] /= counts[live, None]
    barys[live] /= counts[live, None]
    return feats, barys, counts


def init_grid(width: int, height: int, k: int,
              image: np.ndarray | None = None) -> DecompositionState:
    """Initial regular-grid decomposition of a width x height image."""
    labels3, r = _grid_labels((1, height, width), k)
    if image is not None:
        vol = np.asarray(image, dtype=np.float64)[None]
    else:
        vol = np.zeros((1, height, width, 1))
    coords = np.indices((1, height, width), dtype=np.float64)
    k0 = int(labels3.max()) + 1
    feats, barys, counts = _update_clusters(vol, labels3, k0, coords)
    labels = labels3[0]
    return DecompositionState(
        labels=labels, raw_labels=labels.copy(),
        best_distance=np.full((height, width), np.inf),
        features=feats, barycenters=barys[:, 1:], counts=counts,
        pass_features=feats.copy(), pass_barycenters=barys[:, 1:].copy(), r=r)


# ---------------------------------------------------------------------------
# connectivity enforcement
# ---------------------------------------------------------------------------

def _neighbor_votes(lab: np.ndarray, mask: np.ndarray, own: int,
                    region: np.ndarray | None, own_region: int,
                    n_labels: int) -> np.ndarray:
    votes = np.zeros(n_labels, dtype=np.int64)
    nd = lab.ndim
    for axis in range(nd):
        for sign in (1, -1):
            src = [slice(None)] * nd
            dst = [slice(None)] * nd
            if sign == 1:
                src[axis] = slice(0, -1)
                dst[axis] = slice(1, None)
            else:
                src[axis] = slice(1, None)
                dst[axis] = slice(0, -1)
            m = mask[tuple(src)]
            if not m.any():
                continue
            nb = lab[tuple(dst)][m]
            if region is not None:
                nb = nb[region[tuple(dst)][m] == own_region]
            nb = nb[nb != own]
            if nb.size:
                votes += np.bincount(nb, minlength=n_labels)
    return votes


def _enforce_nd(labels: np.ndarray, region: np.ndarray | None = None) -> np.ndarray:
    """Make every label a single 4/6-connected component.

    Each label keeps its largest component; orphan components are absorbed
    by the adjacent label sharing the longest common boundary (ties: lowest
    label). With `region` given, absorption never crosses region borders.
    """
    lab = np.ascontiguousarray(labels).copy()
    n_labels = int(lab.max()) + 1
    for _ in range(lab.size):
        comp = _cc_label(lab, connectivity=1, background=-1)
        ncomp = int(comp.max())
        comp_flat = comp.ravel() - 1
        sizes = np.bincount(comp_flat, minlength=ncomp)
        comp_label = np.zeros(ncomp, dtype=np.int64)
        comp_label[comp_flat] = lab.ravel()
        order = np.lexsort((np.arange(ncomp), -sizes))
        keep = np.zeros(ncomp, dtype=bool)
        seen = set()
        for ci in order:
            if comp_label[ci] not in seen:
                keep[ci] = True
                seen.add(int(comp_label[ci]))
        orphans = np.where(~keep)[0]
        if orphans.size == 0:
            break
        orphans = orphans[np.argsort(sizes[orphans], kind="stable")]
        progressed = False
        for ci in orphans:
            mask = comp == ci + 1
            own = int(comp_label[ci])
            own_region = int(region[mask][0]) if region is not None else 0
            votes = _neighbor_votes(lab, mask, own, region, own_region,
                                    n_labels)
            if votes.max() == 0:
                continue
            lab[mask] = int(np.argmax(votes))
            progressed = True
        if not progressed:
            break
    return lab


def compact_labels(labels: np.ndarray) -> np.ndarray:
    """Relabel to the contiguous range 0..K-1 (order of sorted old ids)."""
    _, inv = np.unique(labels, return_inverse=True)
    return inv.reshape(labels.shape).astype(np.int64)


def enforce_connectivity(labels: np.ndarray) -> np.ndarray:
    """Public 2-D connectivity enforcement followed by label compaction."""
    return compact_labels(_enforce_nd(np.asarray(labels, dtype=np.int64)))


# ---------------------------------------------------------------------------
# engine
# ---------------------------------------------------------------------------

def decompose_volume(vol: np.ndarray, params: ScalpParams,
                     contour: np.ndarray | None = None,
                     region: np.ndarray | None = None,
                     init_labels: np.ndarray | None = None,
                     cluster_regions: np.ndarray | None = None,
                     connectivity: bool = True) -> DecompositionState:
    """Run the decomposition on a (D, H, W, C) volume.

    `init_labels` overrides the grid initialization (used by the
    hard-constraint pipeline together with `region`/`cluster_regions`,
    which confine each cluster's window scan to its own region).
    """
    vol = np.ascontiguousarray(vol, dtype=np.float64)
    d, h, w, _ = vol.shape
    dims = (d, h, w)
    if init_labels is None:
        labels, r = _grid_labels(dims, params.K)
    else:
        labels = np.ascontiguousarray(init_labels, dtype=np.int64)
        n_total = d * h * w
        active = sum(1 for s in dims if s > 1)
        r = (n_total / params.K) ** (1.0 / max(active, 1))
    k0 = int(labels.max()) + 1
    coords = np.indices(dims, dtype=np.float64)
    feats, barys, counts = _update_clusters(vol, labels, k0, coords)
    alive = counts > 0

    kern = _accel.kernels()
    f1, f2 = kern.moments(vol, params.n, params.sigma)
    ri = int(np.ceil(r))

    has_contour = contour is not None and params.gamma > 0
    carr = np.ascontiguousarray(contour, dtype=np.float64) if has_contour \
        else _DUMMY_F
    has_region = region is not None
    rarr = np.ascontiguousarray(region, dtype=np.int64) if has_region \
        else _DUMMY_I
    if cluster_regions is None:
        creg = np.zeros(k0, dtype=np.int64)
    else:
        creg = np.ascontiguousarray(cluster_regions, dtype=np.int64)

    best = np.full(dims, np.inf)
    pass_feats, pass_barys = feats, barys
    for _ in range(params.iterations):
        best = np.full(dims, np.inf)
        kern.assign_pass(f1, f2, feats, barys, alive, labels, best,
                         carr, has_contour, rarr, has_region, creg,
                         ri, float(params.m2_scale), float(params.lam),
                         float(params.gamma))
        pass_feats, pass_barys = feats, barys
        feats, barys, counts = _update_clusters(vol, labels, k0, coords)
        alive = counts > 0

    raw = labels.copy()
    if connectivity:
        final = compact_labels(_enforce_nd(labels, rarr if has_region else None))
    else:
        final = compact_labels(labels)
    return DecompositionState(
        labels=final, raw_labels=raw, best_distance=best,
        features=feats, barycenters=barys, counts=counts,
        pass_features=pass_feats, pass_barycenters=pass_barys, r=r)


def decompose(image: np.ndarray, params: ScalpParams,
              contour: np.ndarray | None = None,
              connectivity: bool = True) -> DecompositionState:
    """2-D decomposition of a (H, W, C) CIELab image; returns full state."""
    image = np.asarray(image, dtype=np.float64)
    h, w = image.shape[:2]
    if contour is not None:
        contour = validate_contour(contour, (h, w))[None]
    state = decompose_volume(image[None], params, contour=contour,
                             connectivity=connectivity)
    state.labels = state.labels[0]
    state.raw_labels = state.raw_labels[0]
    state.best_distance = state.best_distance[0]
    state.barycenters = state.barycenters[:, 1:]
    state.pass_barycenters = state.pass_barycenters[:, 1:]
    return state


def run_scalp(image: np.ndarray, params: ScalpParams,
              contour: np.ndarray | None = None) -> np.ndarray:
    """Decompose a CIELab image into superpixels; returns the label map."""
    return decompose(image, params, contour=contour).labels
