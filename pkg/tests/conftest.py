from __future__ import annotations

import numpy as np
import pytest

from obicubic import box_downscale, set_backend

from _corpus import standard_corpus


@pytest.fixture(scope="session")
def corpus():
    """Ten 512x512 evaluation images as (name, array) pairs."""
    return list(standard_corpus())


@pytest.fixture(scope="session")
def corpus_small(corpus):
    """The corpus shrunk to 128x128 for fast full-grid runs."""
    return [(name, box_downscale(arr, 4)) for name, arr in corpus]


@pytest.fixture(params=["numba", "numpy"])
def each_backend(request):
    """Run a test under both compute backends, restoring the previous one."""
    if request.param == "numba":
        pytest.importorskip("numba")
    previous = set_backend(request.param)
    yield request.param
    set_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
