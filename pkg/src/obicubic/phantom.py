"""Synthetic test scenes for exercising scan conversion.

Real echo frames are not redistributable, so edge phantoms stand in: a
two-region Cartesian scene split by a straight boundary (oblique,
horizontal, or vertical) is sampled onto a polar grid by a forward model,
yielding a :class:`~obicubic.scanconv.PolarFrame` that scan conversion can
render back. Forward sampling always uses plain bilinear reads, so the
frame never favors whichever kernel is being evaluated; optional additive
Gaussian noise comes from a deterministic, seeded generator.
"""

from __future__ import annotations

import math

import numpy as np

from .image import as_image
from .scanconv import PolarFrame, SectorGeometry

EDGE_KINDS = ("oblique", "horizontal", "vertical")


def edge_scene(kind: str, width: int, height: int, lo: float = 0.0, hi: float = 255.0) -> np.ndarray:
    """Two-intensity scene split by a straight boundary.

    ``horizontal`` puts ``hi`` in the top half, ``vertical`` in the left
    half, and ``oblique`` above the main diagonal (pixel (r, c) is ``hi``
    iff ``c >= r``). Intended sizes are 8 pixels and up per side.
    """
    if kind not in EDGE_KINDS:
        raise ValueError(f"edge kind must be one of {EDGE_KINDS}, got {kind!r}")
    if not (0 <= lo < hi <= 255):
        raise ValueError(f"need 0 <= lo < hi <= 255, got lo={lo}, hi={hi}")
    width, height = int(width), int(height)
    if width < 1 or height < 1:
        raise ValueError(f"scene dimensions must be positive, got {width}x{height}")
    scene = np.full((height, width), float(lo))
    if kind == "horizontal":
        scene[: height // 2, :] = hi
    elif kind == "vertical":
        scene[:, : width // 2] = hi
    else:
        rows, cols = np.indices((height, width))
        scene[cols >= rows] = hi
    return scene


def scene_sector(
    width: int,
    height: int,
    n_vectors: int = 128,
    n_samples: int = 512,
    span_deg: float = 90.0,
) -> SectorGeometry:
    """Sector that probes a ``width`` x ``height`` scene from its top center.

    The fan opens downward, symmetric about the vertical, with the radial
    extent reaching the bottom row of the scene.
    """
    half = math.radians(span_deg) / 2.0
    return SectorGeometry(
        n_vectors=n_vectors,
        n_samples=n_samples,
        start_angle=-half,
        end_angle=half,
        apex_x=(width - 1) / 2.0,
        apex_y=0.0,
        pixels_per_sample=(height - 1) / (n_samples - 1),
    )


def polar_sample(scene, geometry: SectorGeometry, noise_sigma: float = 0.0, seed: int = 0) -> PolarFrame:
    """Sample a Cartesian scene onto the polar grid of ``geometry``.

    Beam ``i`` runs at angle ``start + i * span / (n_vectors - 1)``; sample
    ``j`` sits at radius ``j`` (in sample units). Each probe point is a
    clamped bilinear read of the scene, plus N(0, noise_sigma^2) noise when
    ``noise_sigma > 0``. Identical arguments always produce identical frames.
    """
    arr = as_image(scene)
    if noise_sigma < 0:
        raise ValueError(f"noise sigma must be >= 0, got {noise_sigma}")
    g = geometry
    theta = g.start_angle + np.arange(g.n_vectors) * (g.span / (g.n_vectors - 1))
    radius = np.arange(g.n_samples, dtype=np.float64)
    px = g.apex_x + np.outer(np.sin(theta), radius) * g.pixels_per_sample
    py = g.apex_y + np.outer(np.cos(theta), radius) * g.pixels_per_sample
    samples = _bilinear_read(arr, px, py)
    if noise_sigma > 0:
        rng = np.random.default_rng(seed)
        samples = samples + rng.normal(0.0, noise_sigma, samples.shape)
    return PolarFrame(g, samples)


def _bilinear_read(scene: np.ndarray, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Bilinear lookup at real coordinates, clamped to the scene bounds."""
    h, w = scene.shape
    x = np.clip(px, 0.0, w - 1.0)
    y = np.clip(py, 0.0, h - 1.0)
    x0 = np.floor(x).astype(np.int64)
    y0 = np.floor(y).astype(np.int64)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = x - x0
    fy = y - y0
    top = (1.0 - fx) * scene[y0, x0] + fx * scene[y0, x1]
    bot = (1.0 - fx) * scene[y1, x0] + fx * scene[y1, x1]
    return (1.0 - fy) * top + fy * bot
