"""Polar-to-Cartesian scan conversion of sector echo frames.

A frame holds one sample vector per beam angle (vector-major), acquired
over a sector described by :class:`SectorGeometry`. Angles are measured in
radians from the downward vertical, so the sector opens downward like a
conventional echo display; the apex sits at ``(apex_x, apex_y)`` in output
pixel coordinates and ``pixels_per_sample`` sets the radial magnification.

Conversion runs the inverse mapping: every output pixel is projected back
into (angle, radius), out-of-sector pixels become background 0, and
in-sector pixels are interpolated from the frame with any kernel from
:mod:`obicubic.kernels`. The companion ``post_process`` applies display
gamma/brightness/contrast.

Frames round-trip through the "OPF1" file format: one ASCII header line
``OPF1 <n_vectors> <n_samples> <start_angle> <end_angle>
<pixels_per_sample>`` followed by the samples as little-endian float32,
vector-major.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .image import as_image
from .kernels import KernelSpec, sample_points


@dataclass(frozen=True)
class SectorGeometry:
    """Sector layout of a frame: beam fan plus its placement on the canvas."""

    n_vectors: int
    n_samples: int
    start_angle: float
    end_angle: float
    apex_x: float
    apex_y: float
    pixels_per_sample: float

    def __post_init__(self):
        if self.n_vectors < 2:
            raise ValueError(f"need at least 2 vectors, got {self.n_vectors}")
        if self.n_samples < 2:
            raise ValueError(f"need at least 2 samples per vector, got {self.n_samples}")
        if not self.end_angle > self.start_angle:
            raise ValueError(
                f"sector must span a positive angle, got [{self.start_angle}, {self.end_angle}]"
            )
        if not self.pixels_per_sample > 0:
            raise ValueError(
                f"pixels_per_sample must be positive, got {self.pixels_per_sample}"
            )

    @property
    def span(self) -> float:
        return self.end_angle - self.start_angle


@dataclass
class PolarFrame:
    """One acquired frame: geometry plus (n_vectors, n_samples) intensities."""

    geometry: SectorGeometry
    samples: np.ndarray

    def __post_init__(self):
        arr = as_image(self.samples)
        expect = (self.geometry.n_vectors, self.geometry.n_samples)
        if arr.shape != expect:
            raise ValueError(f"frame samples shape {arr.shape} != geometry {expect}")
        self.samples = arr


def scan_convert(frame: PolarFrame, out_width: int, out_height: int, kernel: KernelSpec) -> np.ndarray:
    """Render a frame onto an ``out_height`` x ``out_width`` Cartesian raster.

    Each output pixel maps back to radius (in sample units) and angle; the
    fractional (vector, sample) position is interpolated with ``kernel``
    (border taps clamped, obic applies its coefficient to the fractional
    parts). Pixels outside the sector, or deeper than the last sample, are
    exactly 0. The apex pixel, where every angle meets, reads the middle
    vector.
    """
    if out_width < 1 or out_height < 1:
        raise ValueError(f"output dimensions must be positive, got {out_width}x{out_height}")
    g = frame.geometry
    py, px = np.mgrid[0:out_height, 0:out_width]
    dx = px - g.apex_x
    dy = py - g.apex_y
    radius = np.hypot(dx, dy) / g.pixels_per_sample
    theta = np.arctan2(dx, dy)

    at_apex = radius == 0.0
    mask = (
        ((theta >= g.start_angle) & (theta <= g.end_angle)) | at_apex
    ) & (radius <= g.n_samples - 1)

    vec = (theta - g.start_angle) * ((g.n_vectors - 1) / g.span)
    vec = np.where(at_apex, 0.5 * (g.n_vectors - 1), vec)

    out = np.zeros((out_height, out_width), dtype=np.float64)
    out[mask] = sample_points(frame.samples, vec[mask], radius[mask], kernel)
    return out


def post_process(img, gamma: float = 0.6, brightness: float = 4.2, contrast: float = 120.4) -> np.ndarray:
    """Display conditioning: gamma curve, contrast percentage, brightness offset.

    ``out = (contrast / 100) * 255 * (v / 255)**gamma + brightness`` with the
    result clamped to [0, 255]; settings (1, 0, 100) are the identity.
    Negative inputs (kernel undershoot) are treated as 0 before the power.
    """
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    arr = as_image(img)
    v_norm = np.maximum(arr, 0.0) / 255.0
    out = (contrast / 100.0) * 255.0 * v_norm**gamma + brightness
    return np.clip(out, 0.0, 255.0)


# -- OPF1 frame files ---------------------------------------------------------

_MAGIC = "OPF1"


def write_opf(frame: PolarFrame, path) -> None:
    """Write a frame as OPF1. Sample payload is float32, so values round-trip
    bit-exactly at that precision."""
    g = frame.geometry
    header = (
        f"{_MAGIC} {g.n_vectors} {g.n_samples} "
        f"{g.start_angle!r} {g.end_angle!r} {g.pixels_per_sample!r}\n"
    )
    payload = frame.samples.astype("<f4").tobytes()
    Path(path).write_bytes(header.encode("ascii") + payload)


def read_opf(path) -> PolarFrame:
    """Read an OPF1 frame. The apex is not stored; it is placed so the sector
    fits a minimal canvas (see :func:`fit_canvas`)."""
    blob = Path(path).read_bytes()
    nl = blob.find(b"\n")
    if nl < 0:
        raise ValueError(f"{path}: missing OPF1 header line")
    fields = blob[:nl].decode("ascii", errors="replace").split()
    if len(fields) != 6 or fields[0] != _MAGIC:
        raise ValueError(f"{path}: not an OPF1 frame file")
    n_vectors, n_samples = int(fields[1]), int(fields[2])
    start, end, pps = float(fields[3]), float(fields[4]), float(fields[5])
    raw = blob[nl + 1 :]
    count = n_vectors * n_samples
    if len(raw) != 4 * count:
        raise ValueError(
            f"{path}: payload holds {len(raw)} bytes, expected {4 * count}"
        )
    samples = (
        np.frombuffer(raw, dtype="<f4").astype(np.float64).reshape(n_vectors, n_samples)
    )
    apex_x, apex_y, _, _ = fit_canvas(n_samples, start, end, pps)
    geometry = SectorGeometry(n_vectors, n_samples, start, end, apex_x, apex_y, pps)
    return PolarFrame(geometry, samples)


def fit_canvas(n_samples: int, start_angle: float, end_angle: float, pixels_per_sample: float):
    """Apex position and canvas size that exactly contain the sector.

    Returns ``(apex_x, apex_y, width, height)`` with the apex placed so the
    sector's bounding box starts at pixel (0, 0).
    """
    depth = (n_samples - 1) * pixels_per_sample
    angles = [start_angle, end_angle]
    # Extremes of sin/cos over the angular interval occur at the endpoints
    # or at the cardinal angles the interval crosses.
    for cardinal in (-math.pi / 2.0, 0.0, math.pi / 2.0):
        if start_angle < cardinal < end_angle:
            angles.append(cardinal)
    xs = [depth * math.sin(t) for t in angles] + [0.0]
    ys = [depth * math.cos(t) for t in angles] + [0.0]
    apex_x = -min(xs)
    apex_y = -min(ys)
    width = int(math.ceil(max(xs) - min(xs))) + 1
    height = int(math.ceil(max(ys) - min(ys))) + 1
    return apex_x, apex_y, width, height
