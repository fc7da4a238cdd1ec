"""Grayscale images and their file I/O.

An image is a plain 2-D float64 numpy array, ``shape == (height, width)``,
with intensities nominally in [0, 255]. Values stay floating point through
every processing stage; quantization to 8 bits happens only when a file is
written. That matters because several interpolation kernels have negative
weights, so intermediate pixel values legitimately leave [0, 255].

Supported file formats are binary PGM (P5, maxval 255) and PNG (8-bit
grayscale, or 8-bit RGB converted to luma on load).
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np
from PIL import Image

#: ITU-R BT.601 luma weights for RGB inputs.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def as_image(data) -> np.ndarray:
    """Coerce ``data`` to a valid image array (2-D, finite, float64)."""
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"image must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"image must have positive dimensions, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("image contains non-finite samples")
    return arr


def quantize_clamp(v):
    """Quantize an intensity to an integer in [0, 255].

    Clamps first, then rounds half away from zero. Accepts scalars or
    arrays; scalars come back as ``int``, arrays as ``uint8``.
    """
    arr = np.asarray(v, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("cannot quantize a non-finite intensity")
    # After clamping everything is >= 0, so half away from zero == half up.
    q = np.floor(np.clip(arr, 0.0, 255.0) + 0.5)
    if arr.ndim == 0:
        return int(q)
    return q.astype(np.uint8)


def rgb_to_luma(rgb: np.ndarray) -> np.ndarray:
    """Convert an (h, w, 3) RGB array to float luma via BT.601 weights."""
    rgb = np.asarray(rgb, dtype=np.float64)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValueError(f"expected an (h, w, 3) RGB array, got shape {rgb.shape}")
    wr, wg, wb = LUMA_WEIGHTS
    return wr * rgb[:, :, 0] + wg * rgb[:, :, 1] + wb * rgb[:, :, 2]


def load_image(path) -> np.ndarray:
    """Read a PGM or PNG file into a float64 grayscale array.

    8-bit grayscale data is read as-is; RGB PNGs are converted to luma.
    The format is selected by file extension.
    """
    path = Path(path)
    ext = path.suffix.lower()
    if ext == ".pgm":
        return _read_pgm(path)
    if ext == ".png":
        return _read_png(path)
    raise ValueError(f"unsupported image format {ext!r} (expected .pgm or .png)")


def save_image(img, path) -> None:
    """Quantize and write an image as binary PGM or 8-bit grayscale PNG."""
    arr = as_image(img)
    data = quantize_clamp(arr)
    path = Path(path)
    ext = path.suffix.lower()
    if ext == ".pgm":
        _write_pgm(data, path)
    elif ext == ".png":
        Image.fromarray(data, mode="L").save(path)
    else:
        raise ValueError(f"unsupported image format {ext!r} (expected .pgm or .png)")


def box_downscale(img, factor: int) -> np.ndarray:
    """Shrink an image by averaging non-overlapping ``factor`` x ``factor`` blocks.

    Both dimensions must be divisible by ``factor``. This is the reference
    decimation used to produce low-resolution inputs for upscaling runs.
    """
    arr = as_image(img)
    factor = int(factor)
    if factor < 1:
        raise ValueError(f"scale factor must be >= 1, got {factor}")
    h, w = arr.shape
    if h % factor or w % factor:
        raise ValueError(
            f"image dimensions {h}x{w} are not divisible by scale factor {factor}"
        )
    return arr.reshape(h // factor, factor, w // factor, factor).mean(axis=(1, 3))


# -- PGM (binary P5) ---------------------------------------------------------

_PGM_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _read_pgm(path: Path) -> np.ndarray:
    blob = path.read_bytes()
    if not blob.startswith(b"P5"):
        raise ValueError(f"{path}: not a binary PGM (P5) file")
    pos = 2
    fields = []
    for _ in range(3):  # width, height, maxval
        m = _PGM_TOKEN.match(blob, pos)
        if m is None:
            raise ValueError(f"{path}: truncated PGM header")
        fields.append(m.group(1))
        pos = m.end()
    try:
        width, height, maxval = (int(f) for f in fields)
    except ValueError:
        raise ValueError(f"{path}: malformed PGM header") from None
    if maxval != 255:
        raise ValueError(f"{path}: only maxval 255 PGM is supported, got {maxval}")
    pos += 1  # single whitespace byte separates header from raster
    raster = blob[pos : pos + width * height]
    if len(raster) != width * height:
        raise ValueError(f"{path}: PGM raster truncated")
    return (
        np.frombuffer(raster, dtype=np.uint8)
        .reshape(height, width)
        .astype(np.float64)
    )


def _write_pgm(data: np.ndarray, path: Path) -> None:
    h, w = data.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    path.write_bytes(header + data.tobytes())


# -- PNG ---------------------------------------------------------------------


def _read_png(path: Path) -> np.ndarray:
    with Image.open(path) as im:
        if im.mode == "L":
            return np.asarray(im, dtype=np.float64)
        if im.mode == "RGB":
            return rgb_to_luma(np.asarray(im, dtype=np.float64))
        raise ValueError(
            f"{path}: unsupported PNG mode {im.mode!r} (expected 8-bit L or RGB)"
        )
