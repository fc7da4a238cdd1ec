"""Full-reference image quality metrics and the metric registry.

Ships MSE, PSNR, and SSIM. Additional metrics (including no-reference ones
that ignore the first argument) can be plugged in through
:func:`register_metric`, after which they are selectable in the sweep and
benchmark drivers by name.

Every metric declares the ideal score its values approach for identical
images and whether larger values are better; the sweep uses the ideal to
pick its lead values, the benchmark uses the polarity for win counting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.ndimage import correlate1d

from .image import as_image

#: Dynamic range assumed for 8-bit imagery.
PEAK = 255.0

_SSIM_WINDOW = 11
_SSIM_SIGMA = 1.5
_SSIM_K1 = 0.01
_SSIM_K2 = 0.03


@dataclass(frozen=True)
class Metric:
    """A scoring function plus the metadata the drivers need.

    ``ideal`` is the score of a perfect match, or ``None`` when the metric
    is unbounded in its best direction (PSNR); ``higher_better`` orients
    comparisons; ``full_reference`` marks metrics that need the pristine
    original, which separates win-rate accounting into full- and
    no-reference groups.
    """

    name: str
    fn: Callable[[np.ndarray, np.ndarray], float]
    ideal: float | None
    higher_better: bool
    full_reference: bool = True


def _pair(ref, test):
    r = as_image(ref)
    t = as_image(test)
    if r.shape != t.shape:
        raise ValueError(f"image dimensions differ: {r.shape} vs {t.shape}")
    return r, t


def mse(ref, test) -> float:
    """Mean squared intensity difference."""
    r, t = _pair(ref, test)
    d = r - t
    return float(np.mean(d * d))


def psnr(ref, test) -> float:
    """Peak signal-to-noise ratio in dB against the 8-bit peak of 255.

    Identical images give ``inf``.
    """
    e = mse(ref, test)
    if e == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / e)


def _gaussian_window(n: int, sigma: float) -> np.ndarray:
    x = np.arange(n, dtype=np.float64) - (n - 1) / 2.0
    g = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return g / g.sum()


def _windowed_mean(img: np.ndarray, win: np.ndarray) -> np.ndarray:
    # Separable correlation; 'reflect' repeats the edge sample, i.e.
    # symmetric padding, so every pixel gets a full window.
    tmp = correlate1d(img, win, axis=0, mode="reflect")
    return correlate1d(tmp, win, axis=1, mode="reflect")


def ssim(ref, test) -> float:
    """Mean structural similarity with an 11x11 Gaussian window, sigma 1.5.

    Stabilizing constants are ``(0.01 * 255)**2`` and ``(0.03 * 255)**2``.
    Local statistics are computed at every pixel with symmetric padding and
    the local map is mean-pooled. Requires both dimensions >= 11.
    """
    r, t = _pair(ref, test)
    if min(r.shape) < _SSIM_WINDOW:
        raise ValueError(
            f"image {r.shape} is smaller than the {_SSIM_WINDOW}x{_SSIM_WINDOW} ssim window"
        )
    c1 = (_SSIM_K1 * PEAK) ** 2
    c2 = (_SSIM_K2 * PEAK) ** 2
    win = _gaussian_window(_SSIM_WINDOW, _SSIM_SIGMA)

    mu_r = _windowed_mean(r, win)
    mu_t = _windowed_mean(t, win)
    mu_rr = mu_r * mu_r
    mu_tt = mu_t * mu_t
    mu_rt = mu_r * mu_t
    var_r = _windowed_mean(r * r, win) - mu_rr
    var_t = _windowed_mean(t * t, win) - mu_tt
    cov = _windowed_mean(r * t, win) - mu_rt

    num = (2.0 * mu_rt + c1) * (2.0 * cov + c2)
    den = (mu_rr + mu_tt + c1) * (var_r + var_t + c2)
    return float(np.mean(num / den))


_REGISTRY: dict[str, Metric] = {}


def register_metric(
    name: str,
    fn: Callable[[np.ndarray, np.ndarray], float],
    ideal: float | None,
    higher_better: bool,
    full_reference: bool = True,
) -> Metric:
    """Add a metric to the registry, making it selectable by name.

    Names are case-insensitive and must be unique.
    """
    key = name.strip().lower()
    if not key:
        raise ValueError("metric name must be non-empty")
    if key in _REGISTRY:
        raise ValueError(f"metric {name!r} is already registered")
    metric = Metric(key, fn, ideal, higher_better, full_reference)
    _REGISTRY[key] = metric
    return metric


def get_metric(name: str) -> Metric:
    try:
        return _REGISTRY[name.strip().lower()]
    except KeyError:
        raise ValueError(
            f"unknown metric {name!r}; registered: {', '.join(sorted(_REGISTRY))}"
        ) from None


def metric_names() -> tuple[str, ...]:
    return tuple(_REGISTRY)


register_metric("mse", mse, ideal=0.0, higher_better=False)
register_metric("psnr", psnr, ideal=None, higher_better=True)
register_metric("ssim", ssim, ideal=1.0, higher_better=True)
