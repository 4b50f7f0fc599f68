"""Backend agreement: the compiled kernels must match the pure-Python twin."""

import math

import pytest

from epiplan import ConvergenceError, _kernels_py
from epiplan._backend import BACKEND, kernels

try:
    from epiplan import _kernels
except ImportError:
    _kernels = None

A = 4.59511985013459 / 6.14
B = 6.14
G_B = 1.0 + 6.14 / 15.0
LAM = 0.5
C = 0.15

needs_ext = pytest.mark.skipif(_kernels is None,
                               reason="compiled extension not built")


def test_backend_is_reported():
    assert BACKEND in ("cython", "python")
    assert kernels.logistic_x(B, A, B) == 0.5


@needs_ext
def test_pointwise_kernels_agree():
    for i in range(-50, 251):
        t = i * 0.1
        for a, b in ((A, B), (0.3, 10.0), (2.0, 1.5)):
            assert _kernels.logistic_x(t, a, b) == pytest.approx(
                _kernels_py.logistic_x(t, a, b), rel=1e-14, abs=1e-300)
            assert _kernels.logistic_xdot(t, a, b) == pytest.approx(
                _kernels_py.logistic_xdot(t, a, b), rel=1e-14, abs=1e-300)
            assert _kernels.welfare_density(t, a, b, G_B, LAM, C) == pytest.approx(
                _kernels_py.welfare_density(t, a, b, G_B, LAM, C), rel=1e-14)


@needs_ext
@pytest.mark.parametrize("splits", [
    (4.860440557271052, 7.419559442728948),
    (math.nan, math.nan),
])
def test_integral_kernels_agree(splits):
    args = (A, B, G_B, LAM, C, 15.0, splits[0], splits[1], 1e-9, 60)
    assert _kernels.welfare_integral(*args) == pytest.approx(
        _kernels_py.welfare_integral(*args), abs=1e-11)


@pytest.mark.parametrize("mod", [m for m in (_kernels, _kernels_py) if m is not None])
def test_integral_is_deterministic(mod):
    args = (A, B, G_B, LAM, C, 15.0, 4.860440557271052, 7.419559442728948,
            1e-9, 60)
    assert mod.welfare_integral(*args) == mod.welfare_integral(*args)


@pytest.mark.parametrize("mod", [m for m in (_kernels, _kernels_py) if m is not None])
def test_integral_raises_beyond_depth_budget(mod):
    # unsplit health kink plus a tight tolerance cannot converge in 6 levels
    with pytest.raises(ConvergenceError):
        mod.welfare_integral(A, B, G_B, LAM, C, 15.0, math.nan, math.nan,
                             1e-18, 6)


@pytest.mark.parametrize("mod", [m for m in (_kernels, _kernels_py) if m is not None])
def test_integral_of_unit_density(mod):
    # lam = 0 and capacity never exceeded: the density is exactly 1
    assert mod.welfare_integral(0.3, 15.0, 2.0, 0.0, 0.15, 15.0,
                                math.nan, math.nan, 1e-9, 60) == 15.0
