"""Experiment runner: purity-vs-rate sweeps for all three models, pump
duration optimization, the multi-pair visibility window, and CSV/metadata
export.  Everything here is deterministic; identical configurations produce
identical output files.
"""

from __future__ import annotations

import math
import os
import tempfile
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, DomainError, SimulationError
from .fiber import FiberParams
from .grid import Domain, JointAmplitude, SpectralGrid, dual_grid, transform_2d
from .jsa import build_jsa_analytic
from .jta import build_jta, generation_rate, power_for_rate
from .pump import PumpEnvelope, gaussian_pump, prechirp, square_pump
from .runconfig import ResolvedRun, RunConfig, auto_grid, metadata_text, resolve
from .schmidt import purity_of
from .ssf import SsfConfig, simulate_pair_state

TOOL_VERSION = "0.1.0"

SSF_RATE_RTOL = 0.01


def make_pump(run: ResolvedRun, peak_power: float = 1.0) -> PumpEnvelope:
    """Pump envelope described by the resolved run, at the given peak power."""
    if run.pump_shape == "gaussian":
        pump = gaussian_pump(run.grid, run.tau, peak_power)
    else:
        pump = square_pump(run.grid, run.tau, peak_power, run.edge_smoothing)
    if run.prechirp_length is not None:
        pump = prechirp(pump, run.params.beta2_p, run.prechirp_length)
    return pump


def jsa_observation_grid(run: ResolvedRun) -> SpectralGrid:
    """Detuning grid on which the analytic frequency-domain state is built.

    A positive jsa_window sets the full spectral window to that multiple of
    the phase-matching bandwidth 2 pi / (max |beta1| L), mirroring the
    finite observation windows of typical joint-spectrum computations;
    jsa_window = 0 takes the dual of the time grid instead, i.e. the full
    band-limited representation.
    """
    if run.jsa_window > 0.0:
        beta = max(abs(run.params.beta1_s), abs(run.params.beta1_i))
        if beta > 0.0:
            width = run.jsa_window * 2.0 * math.pi / (beta * run.params.length)
            return SpectralGrid(run.grid.n_points, width / run.grid.n_points)
    return dual_grid(run.grid)


def ssf_power_for_rate(
    run: ResolvedRun,
    target_rate: float,
    rtol: float = SSF_RATE_RTOL,
    max_iter: int = 12,
) -> tuple[float, JointAmplitude, float]:
    """Peak power at which the split-step model hits the target rate.

    The rate is almost exactly quadratic in power (pump reshaping by
    dispersion perturbs it only weakly), so rescaling by sqrt(target /
    measured) converges in a couple of runs; iteration stops at the given
    relative tolerance.  Returns (power, final state, measured rate).
    """
    if target_rate <= 0.0:
        raise DomainError(f"target rate must be positive, got {target_rate}")
    cfg = SsfConfig(run.ssf_steps, run.grid)
    pump_unit = make_pump(run, 1.0)
    try:
        power = power_for_rate(pump_unit, run.params, target_rate)
    except SimulationError:
        power = 1.0
    for _ in range(max_iter):
        state = simulate_pair_state(pump_unit.scaled_to_peak(power), run.params, cfg)
        measured = generation_rate(transform_2d(state))
        if abs(measured - target_rate) <= rtol * target_rate:
            return power, state, measured
        power = power * math.sqrt(target_rate / measured)
    raise SimulationError(
        f"rate search did not converge to {target_rate} within {max_iter} runs"
    )


def state_at_rate(run: ResolvedRun, rate: float) -> tuple[JointAmplitude, float, float]:
    """Build the pair state of the configured model at one generation rate.

    rate = 0 is the zero-power limit: nonlinear phases off, unit peak power
    (purity of the normalized state does not depend on the overall power).
    Returns (state, peak power in W, measured rate); the analytic
    frequency-domain model reports the target back as measured because its
    amplitude carries a conventional overall constant.
    """
    p = run.params
    grid = run.grid
    if run.model == "analytic_jta":
        if rate == 0.0:
            jta = build_jta(make_pump(run, 1.0), p, grid, grid, nonlinear_phase=False)
            return jta, 0.0, 0.0
        power = power_for_rate(make_pump(run, 1.0), p, rate)
        jta = build_jta(make_pump(run, 1.0).scaled_to_peak(power), p, grid, grid)
        return jta, power, generation_rate(jta)
    if run.model == "analytic_jsa":
        power = 0.0 if rate == 0.0 else power_for_rate(make_pump(run, 1.0), p, rate)
        pump = make_pump(run, power if power > 0.0 else 1.0)
        sgrid = jsa_observation_grid(run)
        jsa = build_jsa_analytic(pump, p, sgrid, sgrid, run.include_beta2, run.cw_power)
        return jsa, power, rate
    if run.model == "ssf":
        cfg = SsfConfig(run.ssf_steps, run.grid)
        if rate == 0.0:
            state = simulate_pair_state(make_pump(run, 1.0), p, cfg, nonlinear_phases=False)
            return state, 0.0, 0.0
        power, state, measured = ssf_power_for_rate(run, rate)
        return state, power, measured
    raise ConfigError(f"unknown model {run.model!r}")


def state_at_power(run: ResolvedRun, power: float) -> tuple[JointAmplitude, float, float]:
    """Build the pair state at a fixed pump peak power; returns measured rate too."""
    p = run.params
    pump = make_pump(run, power)
    if run.model == "analytic_jta":
        jta = build_jta(pump, p, run.grid, run.grid)
        return jta, power, generation_rate(jta)
    if run.model == "analytic_jsa":
        # F x G carries a conventional overall amplitude, so no physical
        # rate can be read off the state itself
        sgrid = jsa_observation_grid(run)
        jsa = build_jsa_analytic(pump, p, sgrid, sgrid, run.include_beta2, run.cw_power)
        return jsa, power, float("nan")
    if run.model == "ssf":
        state = simulate_pair_state(pump, p, SsfConfig(run.ssf_steps, run.grid))
        return state, power, generation_rate(transform_2d(state))
    raise ConfigError(f"unknown model {run.model!r}")


def purity_vs_rate(cfg: RunConfig) -> list[dict]:
    """One row per configured rate (or power): purity and bookkeeping.

    A failing row is recorded with its diagnostic and the sweep continues.
    """
    run = resolve(cfg)
    if (run.rates is None) == (run.powers is None):
        raise ConfigError("sweep needs exactly one of a rate list or a power list")
    rows = []
    values = run.rates if run.rates is not None else run.powers
    for value in values:
        row = {"model": run.model, "status": "ok", "error": ""}
        try:
            if run.rates is not None:
                state, power, measured = state_at_rate(run, value)
                row.update(rate_target=value)
            else:
                state, power, measured = state_at_power(run, value)
                row.update(rate_target=float("nan"))
            row.update(
                rate_measured=measured,
                power_w=power,
                purity=purity_of(state),
            )
        except SimulationError as exc:
            row.update(
                rate_target=value if run.rates is not None else float("nan"),
                rate_measured=float("nan"),
                power_w=float("nan"),
                purity=float("nan"),
                status="error",
                error=str(exc),
            )
        rows.append(row)
    return rows


# --- pump duration optimization ---------------------------------------------

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_maximize(f, lo: float, hi: float, rel_tol: float = 1e-3):
    """Derivative-free maximization of a unimodal f on [lo, hi]."""
    if not (hi > lo > 0.0):
        raise ConfigError(f"need 0 < lo < hi, got [{lo}, {hi}]")
    a, b = lo, hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > rel_tol * 0.5 * (a + b):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc > fd else (d, fd)


@dataclass(frozen=True)
class TauOptimum:
    """Best pump duration, its purity, and the full search trace."""

    tau: float
    purity: float
    trace: tuple[tuple[float, float], ...]
    at_boundary: bool


def optimize_tau(
    cfg: RunConfig,
    rate: float,
    bracket: tuple[float, float] | None = None,
    rel_tol: float = 1e-3,
) -> TauOptimum:
    """Golden-section search for the pump duration maximizing purity at a
    fixed generation rate.

    The grid is re-auto-sized for every trial duration (explicit grid
    settings are honoured when given).  If the best value sits on the
    bracket edge a warning is issued and the result is still returned.
    """
    base = resolve(cfg)
    if bracket is None:
        bracket = (0.2 * base.tau, 5.0 * base.tau)
    trace: list[tuple[float, float]] = []

    def purity_at(tau: float) -> float:
        if cfg.pump_shape == "gaussian":
            trial = replace(cfg, tau=tau, bandwidth_nm=None)
        else:
            trial = replace(cfg, duration=tau)
        value = purity_of(state_at_rate(resolve(trial), rate)[0])
        trace.append((tau, value))
        return value

    f_lo = purity_at(bracket[0])
    f_hi = purity_at(bracket[1])
    tau_best, p_best = golden_section_maximize(purity_at, *bracket, rel_tol=rel_tol)
    at_boundary = max(f_lo, f_hi) >= p_best
    if at_boundary:
        warnings.warn(
            f"purity maximum sits at the bracket edge [{bracket[0]:.3e}, "
            f"{bracket[1]:.3e}] s; widen the bracket",
            stacklevel=2,
        )
        if f_lo >= p_best:
            tau_best, p_best = bracket[0], f_lo
        if f_hi > p_best:
            tau_best, p_best = bracket[1], f_hi
    return TauOptimum(tau_best, p_best, tuple(trace), at_boundary)


def visibility_bound(purity: float, rate: float) -> tuple[float, float]:
    """Heuristic interference-visibility window (upper, lower) = (P, P - R).

    The purity caps the two-source interference visibility; multi-pair
    emission (probability about R^2 against single pairs at R) can lower it
    by at most R.  A coarse bookkeeping bound, not a derived quantity.
    """
    if not 0.0 < purity <= 1.0:
        raise DomainError(f"purity must lie in (0, 1], got {purity}")
    if not 0.0 <= rate < 1.0:
        raise DomainError(f"rate must lie in [0, 1), got {rate}")
    return purity, purity - rate


# --- export ------------------------------------------------------------------

def _format(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_rows_csv(rows: list[dict], path: str) -> None:
    """Rows of one sweep as CSV; floats at 17 significant digits."""
    if not rows:
        raise ConfigError("no rows to export")
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format(row.get(key, "")) for key in header))
    _atomic_write(path, "\n".join(lines) + "\n")


def export_matrix(ja: JointAmplitude, out_dir: str, prefix: str) -> dict[str, str]:
    """Magnitude matrix plus one axis sidecar per dimension."""
    unit = "time_s" if ja.domain is Domain.TIME else "detuning_rad_s"
    s_vals, i_vals = ja.axis_values()
    paths = {
        "matrix": os.path.join(out_dir, f"{prefix}_magnitude.csv"),
        "signal_axis": os.path.join(out_dir, f"{prefix}_signal_axis.csv"),
        "idler_axis": os.path.join(out_dir, f"{prefix}_idler_axis.csv"),
    }
    mag = np.abs(ja.matrix)
    _atomic_write(paths["matrix"],
                  "\n".join(",".join(f"{v:.17g}" for v in row) for row in mag) + "\n")
    _atomic_write(paths["signal_axis"],
                  f"signal_{unit}\n" + "\n".join(f"{v:.17g}" for v in s_vals) + "\n")
    _atomic_write(paths["idler_axis"],
                  f"idler_{unit}\n" + "\n".join(f"{v:.17g}" for v in i_vals) + "\n")
    return paths


def export_run(
    rows: list[dict],
    cfg: RunConfig,
    out_dir: str | None = None,
    name: str = "sweep",
    matrices: dict[str, JointAmplitude] | None = None,
) -> dict[str, str]:
    """Write the sweep table, optional matrices, and reproducible metadata.

    Returns a mapping of artifact names to file paths.  The metadata file is
    itself a loadable config with all auto values resolved.
    """
    run = resolve(cfg)
    out_dir = out_dir or run.out_dir
    os.makedirs(out_dir, exist_ok=True)
    paths: dict[str, str] = {}

    table = os.path.join(out_dir, f"{name}.csv")
    write_rows_csv(rows, table)
    paths["table"] = table

    meta = os.path.join(out_dir, "run_metadata.ini")
    _atomic_write(meta, metadata_text(run, TOOL_VERSION))
    paths["metadata"] = meta

    for prefix, ja in (matrices or {}).items():
        for kind, path in export_matrix(ja, out_dir, prefix).items():
            paths[f"{prefix}_{kind}"] = path
    return paths
