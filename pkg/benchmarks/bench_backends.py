"""Benchmark the numba hot loops against the pure-numpy fallback.

Run: python benchmarks/bench_backends.py [--size 512] [--runs 5]

Times the separable upscaling path (bicubic/obic/lanczos3) and the
scan-conversion point samplers under both backends and reports the speedup.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from obicubic import KernelSpec, PolarFrame, SectorGeometry, scan_convert, set_backend, upscale


def _time(fn, warmup, runs):
    for _ in range(warmup):
        fn()
    samples = []
    for _ in range(runs):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return np.mean(samples) * 1000.0, np.std(samples) * 1000.0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=512, help="source image side length")
    parser.add_argument("--runs", type=int, default=5)
    parser.add_argument("--warmup", type=int, default=2)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    img = np.floor(rng.uniform(0, 256, (args.size, args.size)))

    geometry = SectorGeometry(
        n_vectors=257,
        n_samples=args.size,
        start_angle=-math.pi / 4,
        end_angle=math.pi / 4,
        apex_x=float(args.size),
        apex_y=0.0,
        pixels_per_sample=1.0,
    )
    frame = PolarFrame(geometry, rng.uniform(0, 255, (257, args.size)))
    out_w, out_h = 2 * args.size + 1, args.size + 4

    cases = [
        ("upscale bicubic 2X", lambda: upscale(img, 2, KernelSpec.bicubic())),
        ("upscale obic 2X", lambda: upscale(img, 2, KernelSpec.obic())),
        ("upscale lanczos3 2X", lambda: upscale(img, 2, KernelSpec.lanczos(3))),
        ("upscale bicubic 4X", lambda: upscale(img, 4, KernelSpec.bicubic())),
        ("scanconv bilinear", lambda: scan_convert(frame, out_w, out_h, KernelSpec.bilinear())),
        ("scanconv obic", lambda: scan_convert(frame, out_w, out_h, KernelSpec.obic())),
        ("scanconv lanczos3", lambda: scan_convert(frame, out_w, out_h, KernelSpec.lanczos(3))),
    ]

    print(f"source {args.size}x{args.size}, {args.runs} timed runs after {args.warmup} warmups")
    print(f"{'case':<22} {'numba (ms)':>14} {'numpy (ms)':>14} {'speedup':>9}")
    for name, fn in cases:
        results = {}
        for backend in ("numba", "numpy"):
            try:
                prev = set_backend(backend)
            except ImportError:
                results[backend] = None
                continue
            try:
                results[backend] = _time(fn, args.warmup, args.runs)
            finally:
                set_backend(prev)
        nb, np_ = results["numba"], results["numpy"]
        nb_txt = f"{nb[0]:9.2f}+-{nb[1]:.2f}" if nb else "unavailable"
        np_txt = f"{np_[0]:9.2f}+-{np_[1]:.2f}" if np_ else "unavailable"
        speedup = f"{np_[0] / nb[0]:8.2f}x" if nb and np_ else "n/a"
        print(f"{name:<22} {nb_txt:>14} {np_txt:>14} {speedup:>9}")


if __name__ == "__main__":
    main()
