import random

import pytest

from waringlab import common


def test_derive_seed():
    assert common.derive_seed("instance", 1, 2) == common.derive_seed("instance", 1, 2)
    assert common.derive_seed("instance", 1, 2) != common.derive_seed("instance", 2, 1)
    assert 0 <= common.derive_seed("x") < 2**64


def test_thread_count(monkeypatch):
    monkeypatch.delenv(common.THREADS_ENV, raising=False)
    assert common.thread_count() == 1
    monkeypatch.setenv(common.THREADS_ENV, "4")
    assert common.thread_count() == 4
    for bad in ("0", "many"):
        monkeypatch.setenv(common.THREADS_ENV, bad)
        with pytest.raises(ValueError):
            common.thread_count()


def test_parse_threshold_overrides():
    assert common.parse_threshold_overrides(None) == {}
    assert common.parse_threshold_overrides("line=6, conic=9") == {"line": 6, "conic": 9}
    with pytest.raises(ValueError):
        common.parse_threshold_overrides("plane=3")
    with pytest.raises(ValueError):
        common.parse_threshold_overrides("line=six")


def test_random_independent_points():
    rng = random.Random(0)
    points = common.random_independent_points(rng, 3, 4)
    assert len(points) == 4
    with pytest.raises(ValueError):
        common.random_independent_points(rng, 2, 4)
