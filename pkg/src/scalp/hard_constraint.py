"""Hard-constraint pipeline: segment from a hierarchical contour map, then
cluster independently inside each region.

Steps: threshold the hierarchical map into closed regions, merge regions
smaller than a fraction of the mean superpixel size across their weakest
boundary, split large regions with a spatial K-means, and run the
clustering engine with every cluster confined to its parent region.
"""

from dataclasses import dataclass

import numpy as np
from skimage.measure import label as _cc_label
from sklearn.cluster import KMeans

from .clustering import decompose_volume
from .core import ScalpParams

_SHIFTS = ((-1, 0), (1, 0), (0, -1), (0, 1))


@dataclass
class RegionPartition:
    """Image partition into regions plus the thresholded contour map."""

    labels: np.ndarray
    contour_strength: np.ndarray  # thresholded map; 0 off the kept curves

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels.ravel())

    def adjacency(self) -> dict[tuple[int, int], list]:
        """Map (i, j) with i < j to the 4-adjacent boundary pixel pairs."""
        lab = self.labels
        pairs: dict[tuple[int, int], list] = {}
        for axis in (0, 1):
            a = lab[:-1, :] if axis == 0 else lab[:, :-1]
            b = lab[1:, :] if axis == 0 else lab[:, 1:]
            diff = np.argwhere(a != b)
            for y, x in diff:
                p = (y, x)
                q = (y + 1, x) if axis == 0 else (y, x + 1)
                i, j = int(lab[p]), int(lab[q])
                key = (min(i, j), max(i, j))
                pairs.setdefault(key, []).append((p, q))
        return pairs


def _compact(labels: np.ndarray) -> np.ndarray:
    _, inv = np.unique(labels, return_inverse=True)
    return inv.reshape(labels.shape).astype(np.int64)


def threshold_regions(ucm: np.ndarray, tau: float) -> RegionPartition:
    """Suppress contour values below tau and label the enclosed regions.

    Pixels still on a kept curve are absorbed into the adjacent region with
    the most 4-neighbors among them (ties: lowest region label).
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError("tau must lie in [0, 1]")
    ucm = np.asarray(ucm, dtype=np.float64)
    strength = np.where(ucm >= tau, ucm, 0.0)
    free = strength == 0
    if not free.any():
        return RegionPartition(np.zeros(ucm.shape, dtype=np.int64), strength)
    comp = _cc_label(free.astype(np.int64), connectivity=1, background=0)
    labels = comp.astype(np.int64) - 1  # curve pixels -> -1
    h, w = labels.shape
    while (labels < 0).any():
        snapshot = labels.copy()
        progressed = False
        for y, x in np.argwhere(snapshot < 0):
            votes: dict[int, int] = {}
            for dy, dx in _SHIFTS:
                ny, nx = y + dy, x + dx
                if 0 <= ny < h and 0 <= nx < w and snapshot[ny, nx] >= 0:
                    r = int(snapshot[ny, nx])
                    votes[r] = votes.get(r, 0) + 1
            if votes:
                best = max(votes.items(), key=lambda kv: (kv[1], -kv[0]))
                labels[y, x] = best[0]
                progressed = True
        if not progressed:
            labels[labels < 0] = 0
    return RegionPartition(_compact(labels), strength)


def _boundary_strengths(partition: RegionPartition) -> dict[tuple[int, int], float]:
    """Weakest curve strength between each adjacent region pair.

    Per adjacent pixel pair the curve sits on one side, so its strength is
    the max of the two thresholded values; the pair score is the min of
    that over the shared boundary.
    """
    strengths: dict[tuple[int, int], float] = {}
    u = partition.contour_strength
    for key, pairs in partition.adjacency().items():
        vals = [max(float(u[p]), float(u[q])) for p, q in pairs]
        strengths[key] = min(vals)
    return strengths


def merge_small_regions(partition: RegionPartition, umap: np.ndarray,
                        s: float, t: float) -> RegionPartition:
    """Absorb regions smaller than s*t across their weakest boundary.

    Smallest region first; repeats until every region reaches the size
    threshold or a single region remains.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    labels = partition.labels.copy()
    umap = np.asarray(umap, dtype=np.float64)
    threshold = s * t
    while True:
        sizes = np.bincount(labels.ravel())
        present = np.where(sizes > 0)[0]
        if len(present) <= 1:
            break
        small = present[sizes[present] < threshold]
        if small.size == 0:
            break
        i = int(small[np.argsort(sizes[small], kind="stable")[0]])
        part = RegionPartition(labels, umap)
        strengths = _boundary_strengths(part)
        candidates = [(v, j if a == i else a)
                      for (a, j), v in strengths.items() if i in (a, j)]
        if not candidates:
            break
        candidates.sort(key=lambda vj: (vj[0], vj[1]))
        labels[labels == i] = candidates[0][1]
    return RegionPartition(_compact(labels), partition.contour_strength)


def partition_regions(partition: RegionPartition, s: float,
                      seed: int = 0) -> RegionPartition:
    """Split each region holding at least two mean-size superpixels into
    floor(size / s) sub-regions by K-means on pixel coordinates alone."""
    if s <= 0:
        raise ValueError("s must be > 0")
    labels = partition.labels
    out = np.full(labels.shape, -1, dtype=np.int64)
    next_id = 0
    for i in range(int(labels.max()) + 1):
        coords = np.argwhere(labels == i)
        m = int(len(coords) // s)
        if m < 2:
            out[coords[:, 0], coords[:, 1]] = next_id
            next_id += 1
            continue
        km = KMeans(n_clusters=m, n_init=10, random_state=seed)
        sub = km.fit_predict(coords.astype(np.float64))
        out[coords[:, 0], coords[:, 1]] = next_id + sub
        next_id += m
    return RegionPartition(_compact(out), partition.contour_strength)


def prepare_regions(ucm: np.ndarray, params: ScalpParams, tau: float,
                    t: float) -> tuple[RegionPartition, RegionPartition]:
    """Threshold + merge + partition; returns (regions, seed partition)."""
    n_pixels = ucm.size
    s = n_pixels / params.K
    regions = threshold_regions(ucm, tau)
    regions = merge_small_regions(regions, regions.contour_strength, s, t)
    seeds = partition_regions(regions, s, seed=params.rng_seed)
    return regions, seeds


def run_scalp_hc(image: np.ndarray, params: ScalpParams,
                 contour: np.ndarray | None, ucm: np.ndarray,
                 tau: float = 0.4, t: float = 0.15,
                 hard: bool = True) -> np.ndarray:
    """Constrained decomposition: clusters never cross the region borders
    derived from the hierarchical map. With hard=False the regions only
    seed the initialization and the constraint is dropped."""
    image = np.asarray(image, dtype=np.float64)
    h, w = image.shape[:2]
    ucm = np.asarray(ucm, dtype=np.float64)
    if ucm.shape != (h, w):
        raise ValueError("hierarchical map does not match image dimensions")
    regions, seeds = prepare_regions(ucm, params, tau, t)
    init = seeds.labels[None]
    region3 = regions.labels[None]
    # parent region of each seed cluster
    k0 = int(seeds.labels.max()) + 1
    creg = np.zeros(k0, dtype=np.int64)
    flat_seed = seeds.labels.ravel()
    flat_reg = regions.labels.ravel()
    idx = np.unique(flat_seed, return_index=True)[1]
    creg[flat_seed[idx]] = flat_reg[idx]
    if contour is not None:
        contour = np.asarray(contour, dtype=np.float64)[None]
    state = decompose_volume(
        image[None], params, contour=contour,
        region=region3 if hard else None,
        init_labels=init,
        cluster_regions=creg if hard else None)
    return state.labels[0]
