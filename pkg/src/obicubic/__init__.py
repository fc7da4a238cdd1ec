"""Interpolated scan conversion and coefficient-tuned bicubic upscaling.

The package covers the full pipeline around sector (B-mode) ultrasound
display resampling: grayscale image I/O, six interpolation kernels
(nearest with ceil rounding, bilinear, bicubic, the coefficient-scaled
"obic" bicubic, Lanczos-2/3), full-reference quality metrics, the
metric-guided sweep that selects the obic coefficient, polar-to-Cartesian
scan conversion with synthetic edge phantoms, and a benchmark harness with
win-rate accounting.

Hot loops run through numba when available; set ``OBICUBIC_BACKEND=numpy``
to force the pure-numpy fallback (see :mod:`obicubic._backend`).
"""

from ._backend import active_backend, set_backend
from .bench import (
    BenchRecord,
    SIPI_REFERENCE_SET,
    WinReport,
    WinTable,
    bench_csv,
    run_benchmark,
    win_rates,
    write_bench_csv,
)
from .image import (
    LUMA_WEIGHTS,
    as_image,
    box_downscale,
    load_image,
    quantize_clamp,
    rgb_to_luma,
    save_image,
)
from .kernels import (
    DEFAULT_K,
    METHODS,
    FracCoord,
    KernelSpec,
    bicubic_sample,
    bilinear_sample,
    cubic_weights,
    lanczos_weights,
    map_coord,
    nn_upscale,
    sample_points,
    upscale,
)
from .metrics import Metric, get_metric, metric_names, mse, psnr, register_metric, ssim
from .phantom import EDGE_KINDS, edge_scene, polar_sample, scene_sector
from .scanconv import (
    PolarFrame,
    SectorGeometry,
    fit_canvas,
    post_process,
    read_opf,
    scan_convert,
    write_opf,
)
from .sweep import (
    DEFAULT_GRID,
    KGrid,
    LeadValue,
    ScoreCurve,
    SweepReport,
    aggregate_k,
    aggregate_lead_rows,
    lead_value,
    score_curve,
    score_curves,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "DEFAULT_GRID",
    "DEFAULT_K",
    "EDGE_KINDS",
    "FracCoord",
    "KGrid",
    "KernelSpec",
    "LUMA_WEIGHTS",
    "LeadValue",
    "METHODS",
    "Metric",
    "PolarFrame",
    "SIPI_REFERENCE_SET",
    "ScoreCurve",
    "SectorGeometry",
    "SweepReport",
    "WinReport",
    "WinTable",
    "active_backend",
    "aggregate_k",
    "aggregate_lead_rows",
    "as_image",
    "bench_csv",
    "bicubic_sample",
    "bilinear_sample",
    "box_downscale",
    "cubic_weights",
    "edge_scene",
    "fit_canvas",
    "get_metric",
    "lanczos_weights",
    "lead_value",
    "load_image",
    "map_coord",
    "metric_names",
    "mse",
    "nn_upscale",
    "polar_sample",
    "post_process",
    "psnr",
    "quantize_clamp",
    "read_opf",
    "register_metric",
    "rgb_to_luma",
    "run_benchmark",
    "sample_points",
    "save_image",
    "scan_convert",
    "scene_sector",
    "score_curve",
    "score_curves",
    "set_backend",
    "ssim",
    "upscale",
    "win_rates",
    "write_bench_csv",
    "write_opf",
]
