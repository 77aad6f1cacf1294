"""Numba-compiled kernels for the hot loops.

Same contracts and arithmetic as `_kernels_numpy`; see that module for the
documented reference semantics. Loops are written per voxel, which is what
numba compiles well.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _moments_impl(feat, n, sigma):
    d, h, w, c = feat.shape
    f1 = np.zeros((d, h, w, c))
    f2 = np.zeros((d, h, w, c))
    inv = 1.0 / (2.0 * sigma * sigma)
    for z in range(d):
        for y in range(h):
            for x in range(w):
                zacc = 0.0
                for dz in range(max(0, z - n), min(d - 1, z + n) + 1):
                    for dy in range(max(0, y - n), min(h - 1, y + n) + 1):
                        for dx in range(max(0, x - n), min(w - 1, x + n) + 1):
                            d2 = 0.0
                            for ch in range(c):
                                diff = feat[z, y, x, ch] - feat[dz, dy, dx, ch]
                                d2 += diff * diff
                            wgt = np.exp(-d2 * inv)
                            zacc += wgt
                            for ch in range(c):
                                fq = feat[dz, dy, dx, ch]
                                f1[z, y, x, ch] += wgt * fq
                                f2[z, y, x, ch] += wgt * fq * fq
                for ch in range(c):
                    f1[z, y, x, ch] /= zacc
                    f2[z, y, x, ch] /= zacc
    return f1, f2


def moments(feat, n, sigma):
    return _moments_impl(feat, n, sigma)


@njit(cache=True)
def _assign_impl(f1, f2, feats, barys, alive, labels, best,
                 contour, has_contour, region, has_region, creg,
                 ri, m2_scale, lam, gamma):
    d, h, w, c = f1.shape
    n_clusters = feats.shape[0]
    for k in range(n_clusters):
        if not alive[k]:
            continue
        bz, by, bx = barys[k, 0], barys[k, 1], barys[k, 2]
        cz = min(max(int(np.floor(bz + 0.5)), 0), d - 1)
        cy = min(max(int(np.floor(by + 0.5)), 0), h - 1)
        cx = min(max(int(np.floor(bx + 0.5)), 0), w - 1)
        fk2 = 0.0
        for ch in range(c):
            fk2 += feats[k, ch] * feats[k, ch]
        for z in range(max(0, cz - ri), min(d - 1, cz + ri) + 1):
            for y in range(max(0, cy - ri), min(h - 1, cy + ri) + 1):
                for x in range(max(0, cx - ri), min(w - 1, cx + ri) + 1):
                    if has_region and region[z, y, x] != creg[k]:
                        continue
                    ds = (z - bz) ** 2 + (y - by) ** 2 + (x - bx) ** 2
                    # Canonical path orientation: start at the
                    # lexicographically smaller endpoint.
                    if (z, y, x) <= (cz, cy, cx):
                        sz, sy, sx = z, y, x
                        ez, ey, ex = cz, cy, cx
                    else:
                        sz, sy, sx = cz, cy, cx
                        ez, ey, ex = z, y, x
                    dz, dy, dx = ez - sz, ey - sy, ex - sx
                    plen = max(abs(dz), abs(dy), abs(dx))
                    den = max(plen, 1)
                    path_sum = 0.0
                    cmax = 0.0
                    for t in range(plen + 1):
                        qz = sz + (2 * t * dz + den) // (2 * den)
                        qy = sy + (2 * t * dy + den) // (2 * den)
                        qx = sx + (2 * t * dx + den) // (2 * den)
                        dcq = fk2
                        for ch in range(c):
                            dcq += f2[qz, qy, qx, ch] \
                                - 2.0 * feats[k, ch] * f1[qz, qy, qx, ch]
                        path_sum += dcq
                        if has_contour and contour[qz, qy, qx] > cmax:
                            cmax = contour[qz, qy, qx]
                    dcp = fk2
                    for ch in range(c):
                        dcp += f2[z, y, x, ch] \
                            - 2.0 * feats[k, ch] * f1[z, y, x, ch]
                    d_col = lam * dcp + (1.0 - lam) * path_sum / (plen + 1.0)
                    total = d_col + ds * m2_scale
                    if has_contour:
                        total *= 1.0 + gamma * cmax
                    if total < best[z, y, x]:
                        best[z, y, x] = total
                        labels[z, y, x] = k


def assign_pass(f1, f2, feats, barys, alive, labels, best,
                contour, has_contour, region, has_region, creg,
                ri, m2_scale, lam, gamma):
    _assign_impl(f1, f2, feats, barys, alive, labels, best,
                 contour, has_contour, region, has_region, creg,
                 ri, m2_scale, lam, gamma)
