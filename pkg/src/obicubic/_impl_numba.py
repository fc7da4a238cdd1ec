"""Numba-compiled hot loops. Mirrors ``_impl_numpy`` expression for expression.

All kernels stay on strict IEEE semantics (no fastmath) so results match the
numpy backend: bitwise on the shared-table upscaling path, and within
rounding error on the trig-dependent point samplers.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange


@njit(inline="always")
def _clampi(x, n):
    if x < 0:
        return 0
    if x > n - 1:
        return n - 1
    return x


@njit(inline="always")
def _cubic_w(f):
    omf = 1.0 - f
    f2 = f * f
    return (-f * omf * omf, 1.0 - 2.0 * f2 + f2 * f, f * (1.0 + f - f2), -f2 * omf)


@njit(cache=True, parallel=True)
def upscale_weighted(img, row_idx, row_w, col_idx, col_w):
    t_r = row_idx.shape[0]
    t_c = col_idx.shape[0]
    n_r = row_idx.shape[1]
    n_c = col_idx.shape[1]
    out = np.empty((n_r, n_c))
    for i in prange(n_r):
        for j in range(n_c):
            acc = 0.0
            for t in range(t_r):
                r = row_idx[t, i]
                p = col_w[0, j] * img[r, col_idx[0, j]]
                for u in range(1, t_c):
                    p += col_w[u, j] * img[r, col_idx[u, j]]
                if t == 0:
                    acc = row_w[0, i] * p
                else:
                    acc += row_w[t, i] * p
            out[i, j] = acc
    return out


@njit(cache=True, parallel=True)
def sample_points_bilinear(frame, v, s):
    nv, ns = frame.shape
    out = np.empty(v.size)
    for i in prange(v.size):
        bv = math.floor(v[i])
        bs = math.floor(s[i])
        fv = v[i] - bv
        fs = s[i] - bs
        r0 = _clampi(int(bv), nv)
        r1 = _clampi(int(bv) + 1, nv)
        c0 = _clampi(int(bs), ns)
        c1 = _clampi(int(bs) + 1, ns)
        p0 = (1.0 - fs) * frame[r0, c0] + fs * frame[r0, c1]
        p1 = (1.0 - fs) * frame[r1, c0] + fs * frame[r1, c1]
        out[i] = (1.0 - fv) * p0 + fv * p1
    return out


@njit(cache=True, parallel=True)
def sample_points_cubic(frame, v, s, k):
    nv, ns = frame.shape
    out = np.empty(v.size)
    for i in prange(v.size):
        bv = math.floor(v[i])
        bs = math.floor(s[i])
        fv = k * (v[i] - bv)
        fs = k * (s[i] - bs)
        wb0, wb1, wb2, wb3 = _cubic_w(fv)
        wa0, wa1, wa2, wa3 = _cubic_w(fs)
        c0 = _clampi(int(bs) - 1, ns)
        c1 = _clampi(int(bs), ns)
        c2 = _clampi(int(bs) + 1, ns)
        c3 = _clampi(int(bs) + 2, ns)
        acc = 0.0
        for m in range(4):
            r = _clampi(int(bv) + m - 1, nv)
            p = wa0 * frame[r, c0]
            p += wa1 * frame[r, c1]
            p += wa2 * frame[r, c2]
            p += wa3 * frame[r, c3]
            if m == 0:
                acc = wb0 * p
            elif m == 1:
                acc += wb1 * p
            elif m == 2:
                acc += wb2 * p
            else:
                acc += wb3 * p
        out[i] = acc
    return out


@njit(inline="always")
def _sinc(x):
    if x == 0.0:
        return 1.0
    px = math.pi * x
    return math.sin(px) / px


@njit(cache=True, parallel=True)
def sample_points_lanczos(frame, v, s, lobes):
    nv, ns = frame.shape
    taps = 2 * lobes
    out = np.empty(v.size)
    for i in prange(v.size):
        bv = math.floor(v[i])
        bs = math.floor(s[i])
        fv = v[i] - bv
        fs = s[i] - bs
        wv = np.empty(taps)
        ws = np.empty(taps)
        tv = 0.0
        ts = 0.0
        for t in range(taps):
            off = float(t + 1 - lobes)
            xv = fv - off
            xs = fs - off
            wv[t] = _sinc(xv) * _sinc(xv / lobes)
            ws[t] = _sinc(xs) * _sinc(xs / lobes)
            tv += wv[t]
            ts += ws[t]
        acc = 0.0
        for m in range(taps):
            r = _clampi(int(bv) + m + 1 - lobes, nv)
            p = 0.0
            for j in range(taps):
                c = _clampi(int(bs) + j + 1 - lobes, ns)
                p += (ws[j] / ts) * frame[r, c]
            acc += (wv[m] / tv) * p
        out[i] = acc
    return out
