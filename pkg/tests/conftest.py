"""Shared fixtures: standard fiber configurations and grids."""

import numpy as np
import pytest

from fwmpair import (
    TemporalGrid,
    auto_grid,
    cross_polarized_params,
    gaussian_pump,
    get_preset,
)


@pytest.fixture(scope="session")
def asym_params():
    """Idler group-velocity matched, no dispersion, degenerate carriers."""
    return get_preset("asymmetric-generic").params


@pytest.fixture(scope="session")
def sym_params():
    """Signal and idler walking off symmetrically, no dispersion."""
    return get_preset("symmetric-generic").params


@pytest.fixture(scope="session")
def fiber_a():
    return get_preset("fiberA-726").params


def walkoff_tau(p, ratio):
    """Pump tau giving the requested max|beta1| L / tau."""
    return max(abs(p.beta1_s), abs(p.beta1_i)) * p.length / ratio


def asym_state(p, ratio, n=None):
    """Auto-sized grid plus unit-power Gaussian pump at the given ratio."""
    tau = walkoff_tau(p, ratio)
    grid = auto_grid(p, tau, n=n)
    return grid, tau, gaussian_pump(grid, tau, 1.0)


def rng(seed=0):
    return np.random.default_rng(seed)


def random_complex(shape, seed=0):
    r = rng(seed)
    return r.standard_normal(shape) + 1j * r.standard_normal(shape)
