"""Pure-numpy kernels: reference/fallback implementations of the hot loops.

Arrays are always 4-D volumes (depth, height, width, channels); 2-D images
travel through with depth 1. Results are bit-identical to the numba kernels,
which implement the same arithmetic pixel by pixel.
"""

import numpy as np


def moments(feat: np.ndarray, n: int, sigma: float):
    """Weighted neighborhood moments over (2n+1)^3 windows.

    Weights are Gaussian in the squared channel-sum color difference to the
    center voxel, renormalized over the in-bounds part of the window.
    Returns (f1, f2): weighted means of F and F^2 per channel.
    """
    d, h, w, c = feat.shape
    z_acc = np.zeros((d, h, w))
    f1 = np.zeros_like(feat)
    f2 = np.zeros_like(feat)
    inv = 1.0 / (2.0 * sigma * sigma)
    for dz in range(-n, n + 1):
        for dy in range(-n, n + 1):
            for dx in range(-n, n + 1):
                tz0, tz1 = max(0, -dz), d - max(0, dz)
                ty0, ty1 = max(0, -dy), h - max(0, dy)
                tx0, tx1 = max(0, -dx), w - max(0, dx)
                if tz0 >= tz1 or ty0 >= ty1 or tx0 >= tx1:
                    continue
                tgt = (slice(tz0, tz1), slice(ty0, ty1), slice(tx0, tx1))
                src = (slice(tz0 + dz, tz1 + dz),
                       slice(ty0 + dy, ty1 + dy),
                       slice(tx0 + dx, tx1 + dx))
                fp = feat[tgt]
                fq = feat[src]
                wgt = np.exp(-((fp - fq) ** 2).sum(axis=-1) * inv)
                z_acc[tgt] += wgt
                f1[tgt] += wgt[..., None] * fq
                f2[tgt] += wgt[..., None] * fq * fq
    f1 /= z_acc[..., None]
    f2 /= z_acc[..., None]
    return f1, f2


def assign_pass(f1, f2, feats, barys, alive, labels, best,
                contour, has_contour, region, has_region, creg,
                ri, m2_scale, lam, gamma):
    """One clustering assignment pass over all clusters.

    For every live cluster, scans the (2*ri+1)^3 window around its rounded
    barycenter, evaluates the full distance (point + path color terms,
    spatial term, contour weight along the rasterized path to the
    barycenter) and keeps per-voxel argmin in `labels`/`best` in place.

    Vectorized over the window; the path walk is a loop over the step index
    with all window voxels advanced at once.
    """
    d, h, w, _ = f1.shape
    dims = np.array([d, h, w], dtype=np.int64)
    f2sum = f2.sum(axis=-1)
    n_clusters = feats.shape[0]
    for k in range(n_clusters):
        if not alive[k]:
            continue
        b = barys[k]
        cp = np.clip(np.floor(b + 0.5).astype(np.int64), 0, dims - 1)
        lo = np.maximum(cp - ri, 0)
        hi = np.minimum(cp + ri, dims - 1)
        sl = (slice(lo[0], hi[0] + 1), slice(lo[1], hi[1] + 1),
              slice(lo[2], hi[2] + 1))
        fk = feats[k]
        fk2 = float(fk @ fk)
        dc = f2sum[sl] + fk2 - 2.0 * (f1[sl] @ fk)
        zz, yy, xx = np.meshgrid(np.arange(lo[0], hi[0] + 1),
                                 np.arange(lo[1], hi[1] + 1),
                                 np.arange(lo[2], hi[2] + 1), indexing="ij")
        ds = (zz - b[0]) ** 2 + (yy - b[1]) ** 2 + (xx - b[2]) ** 2
        pix = np.stack([zz, yy, xx])
        delta = cp.reshape(3, 1, 1, 1) - pix
        path_len = np.abs(delta).max(axis=0)
        # Canonical orientation: rasterize from the lexicographically smaller
        # endpoint so that reversed endpoints yield the same pixel set.
        key_p = (zz * h + yy) * w + xx
        key_c = (cp[0] * h + cp[1]) * w + cp[2]
        p_first = (key_p <= key_c)[None]
        start = np.where(p_first, pix, cp.reshape(3, 1, 1, 1))
        end = np.where(p_first, cp.reshape(3, 1, 1, 1), pix)
        step = end - start
        den = np.maximum(path_len, 1)[None]
        path_sum = np.zeros_like(ds)
        cmax = np.zeros_like(ds)
        for t in range(int(path_len.max()) + 1):
            on_path = t <= path_len
            q = start + (2 * t * step + den) // (2 * den)
            q[0] = np.clip(q[0], lo[0], hi[0])
            q[1] = np.clip(q[1], lo[1], hi[1])
            q[2] = np.clip(q[2], lo[2], hi[2])
            dcq = dc[q[0] - lo[0], q[1] - lo[1], q[2] - lo[2]]
            path_sum += np.where(on_path, dcq, 0.0)
            if has_contour:
                cq = contour[q[0], q[1], q[2]]
                cmax = np.where(on_path, np.maximum(cmax, cq), cmax)
        d_col = lam * dc + (1.0 - lam) * path_sum / (path_len + 1.0)
        total = d_col + ds * m2_scale
        if has_contour:
            total = total * (1.0 + gamma * cmax)
        upd = total < best[sl]
        if has_region:
            upd &= region[sl] == creg[k]
        best[sl][upd] = total[upd]
        labels[sl][upd] = k
