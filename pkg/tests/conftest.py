import pytest

from epiplan import GFunction, WelfarePolicy


def make_example1(**overrides):
    """Reference scenario: x0=0.01, c=0.15, T=15, b_lb=3.06, g(b) = 1 + b/T."""
    kwargs = dict(x0=0.01, lam=0.5, c=0.15, T=15.0, b_lb=3.06,
                  g=GFunction.affine(1.0, 1.0, 15.0))
    kwargs.update(overrides)
    return WelfarePolicy(**kwargs)


@pytest.fixture
def example1():
    return make_example1()
