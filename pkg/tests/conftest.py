import numpy as np
import pytest

from frameforge.activations import gaussian, normalize_sigma, osc_sinc
from frameforge.frame import build_dictionary
from frameforge.quadrature import default_grid, make_grid


@pytest.fixture(scope="session")
def grid1():
    return make_grid(1, 8.0, 2048)


@pytest.fixture(scope="session")
def gauss1(grid1):
    return normalize_sigma(gaussian(1), grid1)


@pytest.fixture(scope="session")
def osc1():
    spec = osc_sinc(3.5, 1.0)
    return normalize_sigma(spec, default_grid(spec))


@pytest.fixture(scope="session")
def gauss_dict(gauss1, grid1):
    return build_dictionary(gauss1, -2, 4, [-4.0, 4.0], grid1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from importlib import import_module

    try:
        results = import_module("test_acceptance").RESULTS
    except ImportError:
        return
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
