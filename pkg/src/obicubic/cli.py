"""Command-line interface.

Subcommands:

* ``upscale``  - resize one image by an integer factor with any kernel
* ``sweep``    - run the coefficient sweep over an image directory
* ``bench``    - run the benchmark grid, optionally with win-rate summary
* ``scanconv`` - render an OPF1 polar frame to a sector image
* ``phantom``  - generate a synthetic edge-scene frame as OPF1
"""

from __future__ import annotations

import argparse
import sys

from . import bench as bench_mod
from . import phantom as phantom_mod
from . import scanconv as scanconv_mod
from . import sweep as sweep_mod
from .image import load_image, save_image
from .kernels import DEFAULT_K, METHODS, KernelSpec, upscale

_METHOD_CHOICES = METHODS


def _kernel(method: str, k: float) -> KernelSpec:
    if method == "obic":
        return KernelSpec.obic(k)
    return KernelSpec(method)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _str_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="obicubic",
        description="Interpolated upscaling, scan conversion, and quality benchmarking",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("upscale", help="upscale an image by an integer factor")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--scale", type=int, required=True, help="integer upscale factor")
    p.add_argument("--method", choices=_METHOD_CHOICES, required=True)
    p.add_argument("--k", type=float, default=DEFAULT_K, help="obic coefficient (default %(default)s)")

    p = sub.add_parser("sweep", help="sweep the obic coefficient over an image set")
    p.add_argument("--images", required=True, help="directory of .pgm/.png images")
    p.add_argument("--scales", type=_int_list, default=[2, 4, 8])
    p.add_argument("--metrics", type=_str_list, default=["mse", "psnr", "ssim"])
    p.add_argument("--out", required=True, help="CSV report path")
    p.add_argument(
        "--grid",
        default="-3,3,0.1",
        help="coefficient grid as start,end,step (default %(default)s)",
    )

    p = sub.add_parser("bench", help="score images x scales x methods x metrics")
    p.add_argument("--images", required=True, help="directory of .pgm/.png images")
    p.add_argument("--scales", type=_int_list, default=[2, 4, 8])
    p.add_argument("--methods", type=_str_list, default=list(_METHOD_CHOICES))
    p.add_argument("--metrics", type=_str_list, default=["ssim", "psnr", "mse"])
    p.add_argument("--out", required=True, help="CSV table path")
    p.add_argument("--k", type=float, default=DEFAULT_K, help="obic coefficient (default %(default)s)")
    p.add_argument("--win-rates", action="store_true", help="print win-rate summary")

    p = sub.add_parser("scanconv", help="render an OPF1 frame to an image")
    p.add_argument("frame", help="input .opf file")
    p.add_argument("output", help="output .png or .pgm")
    p.add_argument("--method", choices=_METHOD_CHOICES, required=True)
    p.add_argument("--k", type=float, default=DEFAULT_K, help="obic coefficient (default %(default)s)")
    p.add_argument("--gamma", type=float, default=0.6)
    p.add_argument("--brightness", type=float, default=4.2)
    p.add_argument("--contrast", type=float, default=120.4)

    p = sub.add_parser("phantom", help="generate a synthetic edge-scene frame")
    p.add_argument("--edge", choices=phantom_mod.EDGE_KINDS, required=True)
    p.add_argument("--out", required=True, help="output .opf file")
    p.add_argument("--noise", type=float, default=0.0, help="gaussian noise sigma")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width", type=int, default=512, help="scene width in pixels")
    p.add_argument("--height", type=int, default=512, help="scene height in pixels")
    p.add_argument("--lo", type=float, default=0.0, help="dark region intensity")
    p.add_argument("--hi", type=float, default=255.0, help="bright region intensity")
    p.add_argument("--vectors", type=int, default=128, help="beam count")
    p.add_argument("--samples", type=int, default=512, help="radial samples per beam")
    p.add_argument("--span", type=float, default=90.0, help="sector span in degrees")

    return parser


def _cmd_upscale(args) -> int:
    img = load_image(args.input)
    out = upscale(img, args.scale, _kernel(args.method, args.k))
    save_image(out, args.output)
    return 0


def _cmd_sweep(args) -> int:
    start, end, step = (float(t) for t in args.grid.split(","))
    grid = sweep_mod.KGrid(start, end, step)
    files = bench_mod.list_image_files(args.images)
    report = sweep_mod.aggregate_k(files, args.scales, args.metrics, grid)
    report.write_csv(args.out)
    print(f"k = {report.k:.4f}  (report written to {args.out})")
    return 0


def _cmd_bench(args) -> int:
    methods = [_kernel(m, args.k) for m in args.methods]
    files = bench_mod.list_image_files(args.images)
    records = bench_mod.run_benchmark(files, args.scales, methods, args.metrics)
    bench_mod.write_bench_csv(records, args.out)
    print(f"{len(records)} rows written to {args.out}")
    if args.win_rates:
        print(bench_mod.win_rates(records).format())
    return 0


def _cmd_scanconv(args) -> int:
    frame = scanconv_mod.read_opf(args.frame)
    g = frame.geometry
    _, _, width, height = scanconv_mod.fit_canvas(
        g.n_samples, g.start_angle, g.end_angle, g.pixels_per_sample
    )
    img = scanconv_mod.scan_convert(frame, width, height, _kernel(args.method, args.k))
    img = scanconv_mod.post_process(img, args.gamma, args.brightness, args.contrast)
    save_image(img, args.output)
    return 0


def _cmd_phantom(args) -> int:
    scene = phantom_mod.edge_scene(args.edge, args.width, args.height, args.lo, args.hi)
    geometry = phantom_mod.scene_sector(
        args.width, args.height, args.vectors, args.samples, args.span
    )
    frame = phantom_mod.polar_sample(scene, geometry, args.noise, args.seed)
    scanconv_mod.write_opf(frame, args.out)
    return 0


_COMMANDS = {
    "upscale": _cmd_upscale,
    "sweep": _cmd_sweep,
    "bench": _cmd_bench,
    "scanconv": _cmd_scanconv,
    "phantom": _cmd_phantom,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (OSError, ValueError) as exc:
        print(f"obicubic {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
