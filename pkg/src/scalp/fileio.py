"""File formats: PNG/PPM images, PGM maps, CSV labels, raw+JSON volumes."""

import json
from pathlib import Path

import numpy as np
from PIL import Image


# --------------------------------------------------------------------------
# netpbm
# --------------------------------------------------------------------------

def _pnm_tokens(data: bytes):
    i = 0
    while True:
        while i < len(data) and data[i:i + 1].isspace():
            i += 1
        if i < len(data) and data[i:i + 1] == b"#":
            while i < len(data) and data[i:i + 1] != b"\n":
                i += 1
            continue
        if i >= len(data):
            return
        j = i
        while j < len(data) and not data[j:j + 1].isspace():
            j += 1
        yield data[i:j], j
        i = j


def _read_pnm(path: Path) -> np.ndarray:
    data = path.read_bytes()
    toks = _pnm_tokens(data)
    magic, _ = next(toks)
    if magic not in (b"P2", b"P5", b"P6"):
        raise ValueError(f"unsupported netpbm magic {magic!r} in {path}")
    w, _ = next(toks)
    h, _ = next(toks)
    maxval, pos = next(toks)
    w, h, maxval = int(w), int(h), int(maxval)
    if magic == b"P2":
        vals = np.array([int(t) for t, _ in toks], dtype=np.int64)
        img = vals.reshape(h, w)
    else:
        raw = data[pos + 1:]  # single whitespace byte after maxval
        dt = np.dtype(">u2") if maxval > 255 else np.uint8
        ch = 3 if magic == b"P6" else 1
        img = np.frombuffer(raw, dtype=dt, count=h * w * ch).astype(np.int64)
        img = img.reshape((h, w, 3) if ch == 3 else (h, w))
    return img, maxval


def save_pgm16(path, array: np.ndarray) -> None:
    """Write a 2-D array of values in [0, 65535] as binary 16-bit PGM."""
    arr = np.asarray(array)
    if arr.min() < 0 or arr.max() > 65535:
        raise ValueError("values out of 16-bit range")
    h, w = arr.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n65535\n".encode())
        f.write(arr.astype(">u2").tobytes())


# --------------------------------------------------------------------------
# images
# --------------------------------------------------------------------------

def load_image(path) -> np.ndarray:
    """Load a PNG or binary PPM as an 8-bit RGB array."""
    path = Path(path)
    if path.suffix.lower() in (".ppm", ".pgm", ".pnm"):
        img, maxval = _read_pnm(path)
        if img.ndim == 2:
            img = np.stack([img] * 3, axis=-1)
        if maxval != 255:
            img = np.round(img * (255.0 / maxval))
        return img.astype(np.uint8)
    with Image.open(path) as im:
        return np.asarray(im.convert("RGB"))


def load_gray(path) -> np.ndarray:
    """Load an 8/16-bit grayscale PNG or PGM, normalized to [0, 1]."""
    path = Path(path)
    if path.suffix.lower() in (".pgm", ".pnm"):
        img, maxval = _read_pnm(path)
        if img.ndim == 3:
            raise ValueError(f"{path} is not grayscale")
        return img.astype(np.float64) / maxval
    with Image.open(path) as im:
        if im.mode in ("I", "I;16", "I;16B"):
            arr = np.asarray(im, dtype=np.float64)
            return arr / 65535.0
        arr = np.asarray(im.convert("L"), dtype=np.float64)
        return arr / 255.0


def save_image(path, rgb: np.ndarray) -> None:
    Image.fromarray(np.asarray(rgb, dtype=np.uint8), "RGB").save(path)


def save_overlay(path, rgb: np.ndarray, labels: np.ndarray,
                 color=(255, 0, 0)) -> None:
    """Write the image with superpixel boundary pixels painted over."""
    from .contour_prior import boundary_map
    out = np.asarray(rgb, dtype=np.uint8).copy()
    out[boundary_map(labels)] = color
    save_image(path, out)


# --------------------------------------------------------------------------
# label maps
# --------------------------------------------------------------------------

def save_labels(path, labels: np.ndarray) -> None:
    """Write a 2-D label map; format chosen by suffix (.pgm or .csv)."""
    path = Path(path)
    labels = np.asarray(labels)
    if path.suffix.lower() == ".csv":
        np.savetxt(path, labels, fmt="%d", delimiter=",")
    elif path.suffix.lower() == ".pgm":
        if labels.max() > 65535:
            raise ValueError("more than 65536 labels cannot go in a PGM")
        save_pgm16(path, labels)
    else:
        raise ValueError(f"unsupported label format {path.suffix!r}")


def load_labels(path) -> np.ndarray:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return np.loadtxt(path, dtype=np.int64, delimiter=",", ndmin=2)
    img, _ = _read_pnm(path)
    if img.ndim != 2:
        raise ValueError(f"{path} is not a label map")
    return img.astype(np.int64)


# --------------------------------------------------------------------------
# volumes (raw little-endian array + JSON sidecar)
# --------------------------------------------------------------------------

def save_volume(json_path, volume: np.ndarray) -> None:
    """Write a (D, H, W) or (D, H, W, C) volume as raw data + JSON header."""
    json_path = Path(json_path)
    vol = np.asarray(volume)
    raw_path = json_path.with_suffix(".raw")
    header = {
        "dims": list(vol.shape[:3]),
        "channels": int(vol.shape[3]) if vol.ndim == 4 else 1,
        "dtype": vol.dtype.str.lstrip("<>|="),
        "data": raw_path.name,
    }
    vol.astype(np.dtype("<" + header["dtype"])).tofile(raw_path)
    json_path.write_text(json.dumps(header, indent=2) + "\n")


def load_volume(json_path) -> np.ndarray:
    json_path = Path(json_path)
    header = json.loads(json_path.read_text())
    dims = tuple(header["dims"])
    channels = int(header.get("channels", 1))
    dt = np.dtype("<" + header["dtype"])
    raw = np.fromfile(json_path.parent / header["data"], dtype=dt)
    shape = dims + ((channels,) if channels > 1 else ())
    return raw.reshape(shape)


def save_labels_3d(json_path, labels: np.ndarray) -> None:
    save_volume(json_path, np.asarray(labels, dtype=np.uint32))


def load_labels_3d(json_path) -> np.ndarray:
    return load_volume(json_path).astype(np.int64)
