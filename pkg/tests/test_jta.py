"""Time-domain pair amplitude: creation coordinates, nonlinear phase,
support gating, and the generation-rate identities."""

import numpy as np
import pytest
from scipy.integrate import quad

from fwmpair import (
    CoverageError,
    DegenerateWalkoffError,
    Domain,
    DomainError,
    DomainTagError,
    JointAmplitude,
    PumpIntensityAccumulator,
    TemporalGrid,
    auto_grid,
    build_jta,
    creation_coords,
    cross_polarized_params,
    gaussian_pump,
    generation_rate,
    nonlinear_phase_theta,
    power_for_rate,
    purity_of,
    transform_2d,
)

from conftest import asym_state, walkoff_tau


def test_accumulator_invariants(asym_params):
    grid = TemporalGrid(1024, 1e-15)
    pump = gaussian_pump(grid, 30e-15, 2.0)
    acc = PumpIntensityAccumulator.from_pump(pump)
    assert acc.cumulative[0] == 0.0
    assert np.all(np.diff(acc.cumulative) >= 0.0)
    assert abs(acc.cumulative[-1] - pump.energy()) / pump.energy() < 1e-10
    # clamped outside the grid
    assert acc.integral_to(-1.0) == 0.0
    assert acc.integral_to(1.0) == acc.cumulative[-1]


def test_creation_coords_trivials(asym_params, sym_params):
    p = asym_params
    z_c, t_c = creation_coords(3e-13, 3e-13, p)
    assert np.isclose(z_c, p.length, rtol=1e-12)
    # idler group-velocity matched: creation time is the idler arrival time
    z_c, t_c = creation_coords(2e-12, 7e-13, p)
    assert np.isclose(t_c, 7e-13, rtol=1e-12)

    s = sym_params
    t_s, t_i = 1.9e-12, 0.4e-12
    z_c, t_c = creation_coords(t_s, t_i, s)
    assert np.isclose(t_c, 0.5 * (t_s + t_i), rtol=1e-12)
    assert np.isclose(z_c, s.length - (t_s - t_i) / (2.0 * s.beta1_s), rtol=1e-12)


def test_creation_coords_degenerate():
    p = cross_polarized_params(
        length=0.5, beta1_s=1e-11, beta1_i=1e-11,
        beta2_p=0.0, beta2_s=0.0, beta2_i=0.0, gamma_p=0.1,
        lambda_p0=726e-9, lambda_s0=726e-9, lambda_i0=726e-9,
    )
    with pytest.raises(DegenerateWalkoffError):
        creation_coords(1e-12, 2e-12, p)


def test_theta_zero_without_nonlinearity(asym_params):
    grid, tau, pump = asym_state(asym_params, 10.0, n=512)
    acc = PumpIntensityAccumulator.from_pump(pump)
    p0 = cross_polarized_params(
        length=asym_params.length, beta1_s=asym_params.beta1_s, beta1_i=0.0,
        beta2_p=0.0, beta2_s=0.0, beta2_i=0.0, gamma_p=1e-30,
        lambda_p0=726e-9, lambda_s0=726e-9, lambda_i0=726e-9,
    )
    theta = nonlinear_phase_theta(1e-12, 0.0, 0.2, 0.0, pump, acc, p0)
    assert abs(theta) < 1e-25


def test_theta_idler_limit_formula(asym_params):
    # with the idler group-velocity matched, its term is the local limit
    # 2 gamma_i (L - z_c) |E(t_i)|^2; checked against the exact Gaussian
    from fwmpair import FiberParams

    base = asym_params
    grid, tau, pump = asym_state(base, 10.0, n=512)
    acc = PumpIntensityAccumulator.from_pump(pump)
    only_idler = FiberParams(
        length=base.length, beta1_s=base.beta1_s, beta1_i=0.0,
        beta2_p=0.0, beta2_s=0.0, beta2_i=0.0,
        gamma_p=1e-20, gamma_s=0.0, gamma_i=0.03,
        lambda_p0=726e-9, lambda_s0=726e-9, lambda_i0=726e-9,
    )
    t_i = grid.times()[grid.n_points // 2 + 3]  # exactly on a sample
    t_s = t_i + 0.6 * base.beta1_s * base.length
    z_c, t_c = creation_coords(t_s, t_i, only_idler)
    theta = nonlinear_phase_theta(t_s, t_i, z_c, t_c, pump, acc, only_idler)
    idler_expected = (
        2.0 * only_idler.gamma_i * (only_idler.length - z_c)
        * pump.peak_power * np.exp(-(t_i / tau) ** 2)
    )
    assert abs(theta - idler_expected) / idler_expected < 1e-12


def test_theta_idler_limit_continuity(asym_params):
    # the walk-off integral branch approaches the matched limit as beta1_i
    # shrinks (bin-averaged versus point intensity, so first order in dt)
    base = asym_params
    grid, tau, pump = asym_state(base, 10.0, n=512)
    acc = PumpIntensityAccumulator.from_pump(pump)
    t_i = 0.3 * tau
    t_s = t_i + 0.6 * base.beta1_s * base.length

    small = 2e-14  # above the walk-off threshold, integral branch
    p_eps = cross_polarized_params(
        length=base.length, beta1_s=base.beta1_s, beta1_i=small,
        beta2_p=0.0, beta2_s=0.0, beta2_i=0.0, gamma_p=base.gamma_p,
        lambda_p0=726e-9, lambda_s0=726e-9, lambda_i0=726e-9,
    )
    z_c, t_c = creation_coords(t_s, t_i, base)
    exact_limit = nonlinear_phase_theta(t_s, t_i, z_c, t_c, pump, acc, base)
    z_c2, t_c2 = creation_coords(t_s, t_i, p_eps)
    near_limit = nonlinear_phase_theta(t_s, t_i, z_c2, t_c2, pump, acc, p_eps)
    assert abs(near_limit - exact_limit) / abs(exact_limit) < 2e-2


def test_theta_walkoff_term_against_quadrature(asym_params):
    # signal term (2 gamma_s / beta1_s) int_{t_c}^{t_s} |E|^2 dt versus
    # adaptive quadrature of the exact Gaussian intensity
    p = asym_params
    grid, tau, pump = asym_state(p, 10.0, n=1024)
    acc = PumpIntensityAccumulator.from_pump(pump)
    t_i = 0.5 * tau
    t_s = t_i + 0.4 * p.beta1_s * p.length
    z_c, t_c = creation_coords(t_s, t_i, p)
    theta = nonlinear_phase_theta(t_s, t_i, z_c, t_c, pump, acc, p)

    def intensity(t):
        return pump.peak_power * np.exp(-(t / tau) ** 2)

    signal_term = (2.0 * p.gamma_s / p.beta1_s) * quad(intensity, t_c, t_s)[0]
    pump_term = 2.0 * p.gamma_p * z_c * intensity(t_c)
    idler_term = 2.0 * p.gamma_i * (p.length - z_c) * intensity(t_i)
    assert abs(theta - (pump_term + signal_term + idler_term)) / abs(theta) < 1e-3


def test_theta_domain_error(asym_params):
    grid, tau, pump = asym_state(asym_params, 10.0, n=512)
    acc = PumpIntensityAccumulator.from_pump(pump)
    with pytest.raises(DomainError):
        nonlinear_phase_theta(0.0, 0.0, -0.01, 0.0, pump, acc, asym_params)
    with pytest.raises(DomainError):
        nonlinear_phase_theta(0.0, 0.0, asym_params.length * 1.01, 0.0, pump, acc, asym_params)


def test_jta_support_gate(asym_params):
    p = asym_params
    grid, tau, pump = asym_state(p, 5.0, n=512)
    jta = build_jta(pump, p, grid, grid, nonlinear_phase=False)
    ts = grid.times()[:, None]
    ti = grid.times()[None, :]
    z_c = p.length - (ts - ti) / p.beta1_s
    outside = (z_c <= 0.0) | (z_c >= p.length)
    assert np.all(jta.matrix[outside] == 0.0)


def test_jta_support_width_tracks_walkoff(asym_params):
    # the signal-time support at fixed idler time spans exactly beta1_s L
    p = asym_params
    for ratio in (2.0, 5.0, 10.0):
        grid, tau, pump = asym_state(p, ratio, n=512)
        jta = build_jta(pump, p, grid, grid, nonlinear_phase=False)
        k = grid.n_points // 2  # idler bin at the pump peak
        occupied = np.abs(jta.matrix[:, k]) > 0.0
        width = occupied.sum() * grid.dt
        assert abs(width - p.beta1_s * p.length) <= 2.0 * grid.dt


def test_symmetric_jta_orientation(sym_params):
    # the magnitude is a function of (t_s + t_i) and (t_s - t_i) alone, so
    # the principal axes lie along the diagonals: |M| is exactly symmetric
    # under the anti-transpose (t_s, t_i) -> (-t_i, -t_s), and the
    # covariance principal angle is +-45 degrees
    p = sym_params
    tau = 1.4e-12
    grid = auto_grid(p, tau, n=512)
    pump = gaussian_pump(grid, tau, 1.0)
    jta = build_jta(pump, p, grid, grid, nonlinear_phase=False)
    mag = np.abs(jta.matrix)
    flipped = mag[::-1, ::-1].T  # anti-transpose about the grid centre
    assert np.allclose(mag[1:, 1:], flipped[:-1, :-1], atol=1e-12 * mag.max())

    w = mag ** 2
    ts = grid.times()[:, None]
    ti = grid.times()[None, :]
    total = w.sum()
    mean_s = (ts * w).sum() / total
    mean_i = (ti * w).sum() / total
    cov_ss = ((ts - mean_s) ** 2 * w).sum() / total
    cov_ii = ((ti - mean_i) ** 2 * w).sum() / total
    cov_si = ((ts - mean_s) * (ti - mean_i) * w).sum() / total
    assert abs(cov_ss - cov_ii) < 1e-3 * cov_ss
    angle = 0.5 * np.degrees(np.arctan2(2.0 * cov_si, cov_ss - cov_ii))
    assert abs(abs(angle) - 45.0) < 2.0


def test_generation_rate_identities(asym_params):
    p = asym_params
    tau = walkoff_tau(p, 10.0)
    # fine sampling keeps the hard-edge quantization of the rate sum small
    grid = auto_grid(p, tau, n=1024, dt=tau / 12.0)
    pump = gaussian_pump(grid, tau, 1.0)

    zero = JointAmplitude(np.zeros((64, 64), complex), TemporalGrid(64, 1e-15),
                          TemporalGrid(64, 1e-15), Domain.TIME)
    assert generation_rate(zero) == 0.0

    jta = build_jta(pump, p, grid, grid, nonlinear_phase=False)
    closed = (
        p.gamma_s * p.gamma_i * p.length / abs(p.beta1_s - p.beta1_i)
        * pump.peak_power ** 2 * tau * np.sqrt(np.pi / 2.0)
    )
    assert abs(generation_rate(jta) - closed) / closed < 5e-3

    # doubling the peak power quadruples the rate, phases included
    r1 = generation_rate(build_jta(pump.scaled_to_peak(50.0), p, grid, grid))
    r2 = generation_rate(build_jta(pump.scaled_to_peak(100.0), p, grid, grid))
    assert abs(r2 / r1 - 4.0) < 1e-6

    with pytest.raises(DomainTagError):
        generation_rate(transform_2d(jta))


def test_rate_is_domain_independent(asym_params):
    # unitary transforms preserve the summed squared amplitude
    p = asym_params
    grid, tau, pump = asym_state(p, 10.0, n=512)
    jta = build_jta(pump, p, grid, grid, nonlinear_phase=False)
    jsa = transform_2d(jta)
    r_time = np.sum(np.abs(jta.matrix) ** 2) * grid.dt ** 2
    r_freq = np.sum(np.abs(jsa.matrix) ** 2) * grid.dt ** 2
    assert abs(r_time - r_freq) / r_time < 1e-10


def test_power_for_rate(asym_params):
    p = asym_params
    grid, tau, pump = asym_state(p, 10.0, n=512)
    assert power_for_rate(pump, p, 0.0) == 0.0
    p1 = power_for_rate(pump, p, 0.05)
    p4 = power_for_rate(pump, p, 0.2)
    assert abs(p4 / p1 - 2.0) < 1e-12
    with pytest.raises(DomainError):
        power_for_rate(pump, p, -0.1)

    scaled = pump.scaled_to_peak(p1)
    round_trip = generation_rate(build_jta(scaled, p, grid, grid))
    assert abs(round_trip - 0.05) / 0.05 < 1e-6


def test_purity_insensitive_to_phases(asym_params):
    p = asym_params
    grid, tau, pump = asym_state(p, 10.0, n=512)
    power = power_for_rate(pump, p, 0.15)
    with_phase = build_jta(pump.scaled_to_peak(power), p, grid, grid)
    magnitude_only = with_phase.with_matrix(np.abs(with_phase.matrix).astype(complex))
    no_phase = build_jta(pump.scaled_to_peak(power), p, grid, grid, nonlinear_phase=False)
    assert abs(purity_of(no_phase) - purity_of(magnitude_only)) < 1e-10
    # but the physical purity does drop once the phase is kept
    assert purity_of(with_phase) < purity_of(no_phase) - 0.01


def test_purity_monotone_in_walkoff_ratio(asym_params):
    p = asym_params
    purities = []
    for ratio in (2.0, 5.0, 10.0, 20.0, 40.0):
        grid, tau, pump = asym_state(p, ratio)
        purities.append(purity_of(build_jta(pump, p, grid, grid, nonlinear_phase=False)))
    assert np.all(np.diff(purities) > 0.0)


def test_purity_monotone_in_rate(asym_params):
    p = asym_params
    grid, tau, pump = asym_state(p, 10.0)
    purities = []
    for rate in (0.0, 0.05, 0.1, 0.15, 0.2):
        if rate == 0.0:
            jta = build_jta(pump, p, grid, grid, nonlinear_phase=False)
        else:
            power = power_for_rate(pump, p, rate)
            jta = build_jta(pump.scaled_to_peak(power), p, grid, grid)
        purities.append(purity_of(jta))
    assert np.all(np.diff(purities) < 0.0)


def test_jta_coverage_error(asym_params):
    p = asym_params
    tau = walkoff_tau(p, 10.0)
    small = TemporalGrid(128, tau / 8.0)  # window narrower than the walk-off
    pump_grid = auto_grid(p, tau, n=512)
    pump = gaussian_pump(pump_grid, tau, 1.0)
    with pytest.raises(CoverageError):
        build_jta(pump, p, small, small, nonlinear_phase=False)
