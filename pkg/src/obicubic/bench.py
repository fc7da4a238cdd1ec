"""Benchmark harness: score every (image, scale, method, metric) cell.

For each image and scale factor the image is box-downscaled, upscaled back
with each method, and scored against the original with each metric. Rows
come out in deterministic (image, scale, method, metric) order and
serialize to CSV byte-identically across runs.

Win-rate accounting compares methods cell by cell: for every (image,
scale, metric) the strictly best contender by the metric's polarity gets a
win, ties award nobody. Counts are also split into full-reference and
no-reference metric groups when both kinds are present.

The reference evaluation set is the ten classic test images from the
USC-SIPI image database (see ``SIPI_REFERENCE_SET``); they are not
redistributable, so the harness takes whatever directory of .pgm/.png
files it is pointed at.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .image import as_image, box_downscale, load_image
from .kernels import KernelSpec, upscale
from .metrics import get_metric

log = logging.getLogger(__name__)

#: USC-SIPI database references for the standard ten-image evaluation set
#: (download from the database; files are not shipped with this package).
SIPI_REFERENCE_SET = {
    "aerial": "5.2.09",
    "stream-and-bridge": "5.2.10",
    "boat": "boat.512",
    "male": "5.3.01",
    "couple": "5.2.08",
    "house": "house",
    "peppers": "4.2.07",
    "lake": "4.2.06",
    "f16": "4.2.05",
    "baboon": "4.2.03",
}

DEFAULT_METHODS = (
    KernelSpec.nn(),
    KernelSpec.bilinear(),
    KernelSpec.bicubic(),
    KernelSpec.lanczos(2),
    KernelSpec.lanczos(3),
    KernelSpec.obic(),
)


@dataclass(frozen=True)
class BenchRecord:
    image: str
    scale: int
    method: str
    metric: str
    value: float


def run_benchmark(
    images: Iterable,
    scales: Sequence[int],
    methods: Sequence[KernelSpec] = DEFAULT_METHODS,
    metrics: Sequence[str] = ("ssim", "psnr", "mse"),
) -> list[BenchRecord]:
    """Produce one record per (image, scale, method, metric) cell.

    ``images`` may be file paths or ``(name, array)`` pairs. A failing
    image (unreadable, wrong dimensions for a scale) is logged and skipped;
    the remaining cells are still produced.
    """
    scales = [int(s) for s in scales]
    metric_names = [m.strip().lower() for m in metrics]
    resolved = [get_metric(m) for m in metric_names]
    records: list[BenchRecord] = []
    for item in images:
        try:
            name, arr = _named_image(item)
        except (OSError, ValueError) as exc:
            log.error("skipping image %r: %s", item, exc)
            continue
        for scale in scales:
            try:
                small = box_downscale(arr, scale)
            except ValueError as exc:
                log.error("skipping %s at %dX: %s", name, scale, exc)
                continue
            for method in methods:
                up = upscale(small, scale, method)
                for mname, metric in zip(metric_names, resolved):
                    records.append(
                        BenchRecord(name, scale, method.label, mname, metric.fn(arr, up))
                    )
    return records


@dataclass(frozen=True)
class WinTable:
    """Strict-best win counts per method over a set of cells."""

    wins: Mapping[str, int]
    total_cells: int

    def percentage(self, method: str) -> float:
        if self.total_cells == 0:
            return 0.0
        return 100.0 * self.wins.get(method, 0) / self.total_cells

    def format(self) -> str:
        lines = [f"{'method':<16} {'wins':>6} {'cells':>6} {'share':>8}"]
        for method in self.wins:
            lines.append(
                f"{method:<16} {self.wins[method]:>6} {self.total_cells:>6}"
                f" {self.percentage(method):>7.2f}%"
            )
        return "\n".join(lines)


@dataclass(frozen=True)
class WinReport:
    """Overall win table plus the full-/no-reference metric splits."""

    overall: WinTable
    full_reference: WinTable | None
    non_reference: WinTable | None

    def format(self) -> str:
        parts = ["all metrics:", self.overall.format()]
        if self.full_reference is not None:
            parts += ["", "full-reference metrics:", self.full_reference.format()]
        if self.non_reference is not None:
            parts += ["", "no-reference metrics:", self.non_reference.format()]
        return "\n".join(parts)


def win_rates(records: Sequence[BenchRecord], contenders: Sequence[str] | None = None) -> WinReport:
    """Count, per metric cell, which contender scores strictly best.

    ``contenders`` restricts the comparison to a method subset (default:
    every method present). Each contender must have a value in every cell;
    a missing one raises with the gap named.
    """
    if contenders is None:
        seen: list[str] = []
        for r in records:
            if r.method not in seen:
                seen.append(r.method)
        contenders = seen
    else:
        contenders = list(contenders)
    if len(contenders) < 2:
        raise ValueError("win-rate accounting needs at least two contenders")

    cells: dict[tuple[str, int, str], dict[str, float]] = {}
    for r in records:
        if r.method in contenders:
            cells.setdefault((r.image, r.scale, r.metric), {})[r.method] = r.value
    for key, values in sorted(cells.items()):
        missing = [m for m in contenders if m not in values]
        if missing:
            raise ValueError(
                f"cell (image={key[0]}, scale={key[1]}, metric={key[2]})"
                f" lacks method(s): {', '.join(missing)}"
            )

    def count(keys) -> WinTable:
        wins = {m: 0 for m in contenders}
        for key in keys:
            values = cells[key]
            metric = get_metric(key[2])
            ranked = sorted(
                contenders,
                key=lambda m: values[m],
                reverse=metric.higher_better,
            )
            if values[ranked[0]] != values[ranked[1]]:  # strict best only
                wins[ranked[0]] += 1
        return WinTable(wins, len(keys))

    all_keys = sorted(cells)
    fr_keys = [k for k in all_keys if get_metric(k[2]).full_reference]
    nr_keys = [k for k in all_keys if not get_metric(k[2]).full_reference]
    return WinReport(
        overall=count(all_keys),
        full_reference=count(fr_keys) if fr_keys else None,
        non_reference=count(nr_keys) if nr_keys else None,
    )


def bench_csv(records: Sequence[BenchRecord]) -> str:
    """Serialize records to CSV (6 significant digits, stable order)."""
    lines = ["image,scale,method,metric,value"]
    for r in records:
        lines.append(f"{r.image},{r.scale},{r.method},{r.metric},{r.value:.6g}")
    return "\n".join(lines) + "\n"


def write_bench_csv(records: Sequence[BenchRecord], path) -> None:
    Path(path).write_text(bench_csv(records))


def list_image_files(directory) -> list[Path]:
    """The .pgm/.png files of a directory, sorted by name."""
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"{directory} is not a directory")
    files = sorted(
        p for p in directory.iterdir() if p.suffix.lower() in (".pgm", ".png")
    )
    if not files:
        raise FileNotFoundError(f"no .pgm or .png images in {directory}")
    return files


def _named_image(item) -> tuple[str, np.ndarray]:
    if isinstance(item, (str, Path)):
        return Path(item).stem, load_image(item)
    name, arr = item
    return str(name), as_image(arr)
