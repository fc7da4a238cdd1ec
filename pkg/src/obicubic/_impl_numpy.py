"""Pure-numpy fallback for the hot resampling loops.

Accumulation order matches the numba backend term for term so the two
produce identical floating-point results on the shared-table upscaling
path and agree to rounding error on the point samplers.
"""

from __future__ import annotations

import numpy as np


def upscale_weighted(img, row_idx, row_w, col_idx, col_w):
    """Separable weighted gather: horizontal pass over columns, then vertical."""
    horiz = img[:, col_idx[0]] * col_w[0]
    for t in range(1, col_idx.shape[0]):
        horiz = horiz + img[:, col_idx[t]] * col_w[t]
    out = horiz[row_idx[0], :] * row_w[0][:, np.newaxis]
    for t in range(1, row_idx.shape[0]):
        out = out + horiz[row_idx[t], :] * row_w[t][:, np.newaxis]
    return out


def _split(coord, n, k=1.0):
    base = np.floor(coord)
    frac = k * (coord - base)
    return base.astype(np.int64), frac


def _tap(base, offset, n):
    return np.clip(base + offset, 0, n - 1)


def sample_points_bilinear(frame, v, s):
    nv, ns = frame.shape
    bv, fv = _split(v, nv)
    bs, fs = _split(s, ns)
    r0, r1 = _tap(bv, 0, nv), _tap(bv, 1, nv)
    c0, c1 = _tap(bs, 0, ns), _tap(bs, 1, ns)
    p0 = (1.0 - fs) * frame[r0, c0] + fs * frame[r0, c1]
    p1 = (1.0 - fs) * frame[r1, c0] + fs * frame[r1, c1]
    return (1.0 - fv) * p0 + fv * p1


def _cubic_w(f):
    omf = 1.0 - f
    f2 = f * f
    return (-f * omf * omf, 1.0 - 2.0 * f2 + f2 * f, f * (1.0 + f - f2), -f2 * omf)


def sample_points_cubic(frame, v, s, k):
    nv, ns = frame.shape
    bv, fv = _split(v, nv, k)
    bs, fs = _split(s, ns, k)
    wb = _cubic_w(fv)
    wa = _cubic_w(fs)
    cols = [_tap(bs, j - 1, ns) for j in range(4)]
    out = None
    for m in range(4):
        row = _tap(bv, m - 1, nv)
        p = wa[0] * frame[row, cols[0]]
        for j in range(1, 4):
            p = p + wa[j] * frame[row, cols[j]]
        term = wb[m] * p
        out = term if out is None else out + term
    return out


def _sinc(x):
    return np.sinc(x)


def sample_points_lanczos(frame, v, s, lobes):
    nv, ns = frame.shape
    bv, fv = _split(v, nv)
    bs, fs = _split(s, ns)
    taps = 2 * lobes
    offsets = np.arange(1 - lobes, lobes + 1, dtype=np.float64)

    def weights(frac):
        x = frac[:, np.newaxis] - offsets
        w = _sinc(x) * _sinc(x / lobes)
        return w / w.sum(axis=1, keepdims=True)

    wv = weights(fv)
    ws = weights(fs)
    cols = [_tap(bs, t + 1 - lobes, ns) for t in range(taps)]
    out = None
    for m in range(taps):
        row = _tap(bv, m + 1 - lobes, nv)
        p = ws[:, 0] * frame[row, cols[0]]
        for j in range(1, taps):
            p = p + ws[:, j] * frame[row, cols[j]]
        term = wv[:, m] * p
        out = term if out is None else out + term
    return out
