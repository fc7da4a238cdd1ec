import logging

import numpy as np
import pytest

import obicubic.metrics as metrics_mod
from obicubic import (
    BenchRecord,
    KernelSpec,
    bench_csv,
    box_downscale,
    register_metric,
    run_benchmark,
    save_image,
    upscale,
    win_rates,
    write_bench_csv,
)
from obicubic.bench import DEFAULT_METHODS, list_image_files


def _mk(image, scale, method, metric, value):
    return BenchRecord(image, scale, method, metric, value)


class TestRunBenchmark:
    def test_constant_image_single_cell(self):
        img = np.full((64, 64), 128.0)
        records = run_benchmark([("flat", img)], [2], [KernelSpec.bicubic()], ["mse"])
        assert len(records) == 1
        r = records[0]
        assert (r.image, r.scale, r.method, r.metric) == ("flat", 2, "bicubic", "mse")
        assert r.value == pytest.approx(0.0, abs=1e-18)

    def test_cardinality_and_order(self, rng):
        imgs = [(f"im{i}", np.floor(rng.uniform(0, 256, (16, 16)))) for i in range(3)]
        methods = [KernelSpec.nn(), KernelSpec.bilinear()]
        records = run_benchmark(imgs, [2, 4], methods, ["mse", "psnr"])
        assert len(records) == 3 * 2 * 2 * 2
        keys = [(r.image, r.scale, r.method, r.metric) for r in records]
        assert keys[0] == ("im0", 2, "nn", "mse")
        assert keys[1] == ("im0", 2, "nn", "psnr")
        assert keys[2] == ("im0", 2, "bilinear", "mse")
        assert keys == sorted(
            keys,
            key=lambda k: (
                [f"im{i}" for i in range(3)].index(k[0]),
                k[1],
                ["nn", "bilinear"].index(k[2]),
                ["mse", "psnr"].index(k[3]),
            ),
        )

    def test_bad_image_skipped_rest_survive(self, rng, tmp_path, caplog):
        good = tmp_path / "good.pgm"
        save_image(np.floor(rng.uniform(0, 256, (16, 16))), good)
        bad = tmp_path / "bad.pgm"
        bad.write_bytes(b"not a pgm at all")
        with caplog.at_level(logging.ERROR, logger="obicubic.bench"):
            records = run_benchmark([bad, good], [2], [KernelSpec.nn()], ["mse"])
        assert [r.image for r in records] == ["good"]
        assert any("bad" in m for m in caplog.messages)

    def test_indivisible_scale_skipped_for_that_image(self, rng, caplog):
        imgs = [("odd", np.zeros((15, 15))), ("even", np.zeros((16, 16)))]
        with caplog.at_level(logging.ERROR, logger="obicubic.bench"):
            records = run_benchmark(imgs, [2], [KernelSpec.nn()], ["mse"])
        assert [r.image for r in records] == ["even"]

    def test_obic_beats_bicubic_on_textured_cell(self, corpus_small):
        name, img = corpus_small[0]
        records = run_benchmark(
            [(name, img)], [2], [KernelSpec.bicubic(), KernelSpec.obic()], ["ssim", "psnr", "mse"]
        )
        vals = {(r.method, r.metric): r.value for r in records}
        assert vals[("obic", "ssim")] > vals[("bicubic", "ssim")]
        assert vals[("obic", "psnr")] > vals[("bicubic", "psnr")]
        assert vals[("obic", "mse")] < vals[("bicubic", "mse")]


class TestWinRates:
    def test_counts_strict_best(self):
        records = []
        for i in range(10):
            a = 1.0 if i < 9 else 3.0
            records.append(_mk(f"i{i}", 2, "A", "mse", a))
            records.append(_mk(f"i{i}", 2, "B", "mse", 2.0))
        report = win_rates(records, ["A", "B"])
        assert report.overall.wins == {"A": 9, "B": 1}
        assert report.overall.total_cells == 10
        assert report.overall.percentage("A") == pytest.approx(90.0)

    def test_tie_awards_nobody(self):
        records = [
            _mk("x", 2, "A", "mse", 5.0),
            _mk("x", 2, "B", "mse", 5.0),
        ]
        report = win_rates(records, ["A", "B"])
        assert report.overall.wins == {"A": 0, "B": 0}
        assert report.overall.total_cells == 1

    def test_polarity_respected(self):
        records = [
            _mk("x", 2, "A", "ssim", 0.9),
            _mk("x", 2, "B", "ssim", 0.8),
            _mk("x", 2, "A", "mse", 10.0),
            _mk("x", 2, "B", "mse", 5.0),
        ]
        report = win_rates(records, ["A", "B"])
        assert report.overall.wins == {"A": 1, "B": 1}

    def test_missing_cell_names_the_gap(self):
        records = [
            _mk("x", 2, "A", "mse", 1.0),
            _mk("x", 2, "B", "mse", 2.0),
            _mk("y", 2, "A", "mse", 1.0),
        ]
        with pytest.raises(ValueError, match=r"image=y.*lacks.*B"):
            win_rates(records, ["A", "B"])

    def test_order_independence(self, rng):
        records = []
        for i in range(6):
            for m in ("A", "B", "C"):
                records.append(_mk(f"i{i}", 2, m, "mse", float(rng.integers(0, 50))))
        base = win_rates(records, ["A", "B", "C"])
        perm = list(records)
        rng.shuffle(perm)
        again = win_rates(perm, ["A", "B", "C"])
        assert base.overall.wins == again.overall.wins
        assert base.overall.total_cells == again.overall.total_cells

    def test_full_and_non_reference_splits(self):
        name = "sharpness_bench_test"
        register_metric(
            name, lambda r, t: float(np.var(t)), ideal=None, higher_better=True, full_reference=False
        )
        try:
            records = [
                _mk("x", 2, "A", "mse", 1.0),
                _mk("x", 2, "B", "mse", 2.0),
                _mk("x", 2, "A", name, 3.0),
                _mk("x", 2, "B", name, 9.0),
            ]
            report = win_rates(records, ["A", "B"])
            assert report.overall.wins == {"A": 1, "B": 1}
            assert report.full_reference.wins == {"A": 1, "B": 0}
            assert report.non_reference.wins == {"A": 0, "B": 1}
        finally:
            metrics_mod._REGISTRY.pop(name)

    def test_needs_two_contenders(self):
        with pytest.raises(ValueError):
            win_rates([_mk("x", 2, "A", "mse", 1.0)], ["A"])


class TestCsv:
    def test_header_and_formatting(self):
        records = [
            _mk("img", 2, "bicubic", "mse", 242.432123),
            _mk("img", 2, "bicubic", "psnr", float("inf")),
        ]
        text = bench_csv(records)
        lines = text.strip().split("\n")
        assert lines[0] == "image,scale,method,metric,value"
        assert lines[1] == "img,2,bicubic,mse,242.432"
        assert lines[2] == "img,2,bicubic,psnr,inf"

    def test_registered_metric_appears_in_output(self, rng):
        name = "negmse_csv_test"
        register_metric(name, lambda r, t: -float(np.mean((r - t) ** 2)), ideal=0.0, higher_better=True)
        try:
            img = np.floor(rng.uniform(0, 256, (16, 16)))
            records = run_benchmark([("t", img)], [2], [KernelSpec.bilinear()], ["mse", name])
            text = bench_csv(records)
            assert name in text
        finally:
            metrics_mod._REGISTRY.pop(name)

    def test_byte_identical_reruns(self, rng, tmp_path):
        imgs = [(f"i{k}", np.floor(rng.uniform(0, 256, (16, 16)))) for k in range(2)]
        paths = []
        for run in range(2):
            records = run_benchmark(imgs, [2, 4], list(DEFAULT_METHODS), ["ssim", "psnr", "mse"])
            p = tmp_path / f"run{run}.csv"
            write_bench_csv(records, p)
            paths.append(p)
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestListImageFiles:
    def test_sorted_and_filtered(self, tmp_path, rng):
        img = np.floor(rng.uniform(0, 256, (8, 8)))
        for stem in ("b", "a", "c"):
            save_image(img, tmp_path / f"{stem}.pgm")
        (tmp_path / "notes.txt").write_text("ignore me")
        files = list_image_files(tmp_path)
        assert [f.stem for f in files] == ["a", "b", "c"]

    def test_empty_dir_rejected(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            list_image_files(tmp_path)

    def test_not_a_dir(self, tmp_path):
        with pytest.raises(NotADirectoryError):
            list_image_files(tmp_path / "nope")
