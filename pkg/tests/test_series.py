import math

import numpy as np
import pytest

from fringetrees.series import ConstantResult, TailBoundError, series_sum


def test_empty_sum():
    r = series_sum(lambda k: 1 / k, start=5, cutoff=4)
    assert r.value == 0.0 and r.error == 0.0


def test_finite_sum():
    r = series_sum(lambda k: 1 / (k * (k + 1)), start=1, cutoff=1000, tail=False)
    assert r.value == pytest.approx(1 - 1 / 1001, abs=1e-15)


def test_telescoping_with_tail():
    r = series_sum(lambda k: 1 / (k * (k + 1)), cutoff=10**5)
    assert abs(r.value - 1.0) <= r.error
    assert r.error < 1e-10


def test_basel():
    r = series_sum(lambda k: 1 / k**2, cutoff=10**6)
    assert abs(r.value - math.pi**2 / 6) <= r.error


def test_log_series_error_covers_truth():
    # Σ ln k/(k(k+1)) = 0.78853056591150896... (independent high-precision value)
    r = series_sum(lambda k: np.log(k) / (k * (k + 1)), start=2)
    assert abs(r.value - 0.788530565911509) <= r.error + 1e-15
    assert r.error < 1e-12


def test_small_cutoff_error_is_honest():
    truth = series_sum(lambda k: np.log(k) / (k * (k + 1)), start=2).value
    r = series_sum(lambda k: np.log(k) / (k * (k + 1)), start=2, cutoff=1000)
    assert abs(r.value - truth) <= r.error


def test_non_monotone_tail_rejected():
    with pytest.raises(TailBoundError):
        series_sum(lambda k: np.sin(k) ** 2 / k**2 + 1e-3 * np.cos(k / 10**6), cutoff=10**3)


def test_result_helpers():
    r = ConstantResult("x", 1.0, 0.1, "m", published=1.05)
    assert r.contains(1.05) and not r.contains(1.2)
    assert r.deviation() == pytest.approx(0.05)
    assert r.as_row()["id"] == "x"
