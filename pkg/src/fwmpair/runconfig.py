"""Run configuration: flat INI-style config files, auto grid sizing, and the
fully resolved parameter set that gets persisted with every run.

Unknown sections or keys in a config file are hard errors.  A run's exported
metadata file is itself a valid config file with every auto value resolved,
so rerunning from it reproduces the run exactly.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, replace

from .errors import ConfigError
from .fiber import FiberParams
from .grid import TemporalGrid
from .presets import get_preset
from .pump import bandwidth_to_tau

MODELS = ("analytic_jsa", "analytic_jta", "ssf")
PUMP_SHAPES = ("gaussian", "square")

MAX_AUTO_POINTS = 16384
MIN_AUTO_POINTS = 512


@dataclass(frozen=True)
class RunConfig:
    """User-facing knobs; None means "resolve automatically"."""

    model: str = "analytic_jta"
    preset: str | None = "asymmetric-generic"
    fiber: FiberParams | None = None
    length: float | None = None
    pump_shape: str = "gaussian"
    tau: float | None = None
    duration: float | None = None
    bandwidth_nm: float | None = None
    edge_smoothing: float = 0.0
    prechirp_length: float | None = None
    rates: tuple[float, ...] | None = None
    powers: tuple[float, ...] | None = None
    grid_n: int | None = None
    grid_dt: float | None = None
    ssf_steps: int | None = None
    include_beta2: bool = False
    cw_power: float = 0.0
    jsa_window: float = 8.0
    filter_axis: str = "idler"
    filter_widths: tuple[float, ...] | None = None
    filter_center: float | None = None
    out_dir: str = "runs/out"


@dataclass(frozen=True)
class ResolvedRun:
    """Every parameter pinned down; what metadata records."""

    model: str
    preset_name: str | None
    preset_version: str | None
    params: FiberParams
    pump_shape: str
    tau: float
    edge_smoothing: float
    prechirp_length: float | None
    grid: TemporalGrid
    ssf_steps: int | None
    include_beta2: bool
    cw_power: float
    jsa_window: float
    rates: tuple[float, ...] | None
    powers: tuple[float, ...] | None
    filter_axis: str
    filter_widths: tuple[float, ...] | None
    filter_center: float | None
    out_dir: str


def auto_grid(
    p: FiberParams,
    scale: float,
    envelope_halfwidth: float | None = None,
    n: int | None = None,
    dt: float | None = None,
    pad: float = 0.0,
    dt_cap: float | None = None,
) -> TemporalGrid:
    """Symmetric time window sized for the walk-off support plus margins.

    ``scale`` is the pump duration parameter (Gaussian tau, or the
    equivalent scale of a square pulse).  The window keeps the amplitude
    support at least 4 * scale away from the edges, and dt is chosen fine
    enough that the dual spectral window covers at least four
    phase-matching bandwidths 2 pi / (|beta1| L).  ``dt_cap`` imposes an
    additional upper bound on an automatically chosen dt.
    """
    if scale <= 0.0:
        raise ConfigError(f"pump duration scale must be positive, got {scale}")
    walk = max(abs(p.beta1_s), abs(p.beta1_i)) * p.length
    h0 = envelope_halfwidth if envelope_halfwidth is not None else 4.0 * scale
    if dt is None:
        candidates = [scale / 6.0]
        walks = [abs(b) * p.length for b in (p.beta1_s, p.beta1_i) if b != 0.0]
        if walks:
            candidates.append(min(walks) / 4.0)
        if dt_cap is not None:
            candidates.append(dt_cap)
        dt = min(candidates)
    if n is None:
        half = walk + h0 + 4.0 * scale + pad
        n = 1 << math.ceil(math.log2(2.0 * half / dt))
        n = max(n, MIN_AUTO_POINTS)
        if n > MAX_AUTO_POINTS:
            raise ConfigError(
                f"auto-sized grid needs {n} points (> {MAX_AUTO_POINTS}); "
                "supply an explicit grid or shrink the configuration"
            )
    return TemporalGrid(n, dt)


def auto_steps(p: FiberParams, grid: TemporalGrid) -> int:
    """Step count so each photon moves at most half a time bin per step."""
    beta_max = max(abs(p.beta1_s), abs(p.beta1_i))
    if beta_max == 0.0:
        return 64
    return max(16, math.ceil(2.0 * beta_max * p.length / grid.dt))


def resolve(cfg: RunConfig) -> ResolvedRun:
    """Pin every automatic value; validates the configuration."""
    if cfg.model not in MODELS:
        raise ConfigError(f"unknown model {cfg.model!r}; choose from {MODELS}")
    if cfg.pump_shape not in PUMP_SHAPES:
        raise ConfigError(f"unknown pump shape {cfg.pump_shape!r}")
    if cfg.rates is not None and cfg.powers is not None:
        raise ConfigError("give a rate list or a power list, not both")

    preset_version = None
    if cfg.fiber is not None:
        params = cfg.fiber
        if cfg.length is not None:
            params = replace(params, length=cfg.length)
    elif cfg.preset is not None:
        preset = get_preset(cfg.preset, length=cfg.length)
        params = preset.params
        preset_version = preset.version
    else:
        raise ConfigError("configuration needs a preset or explicit fiber parameters")

    if cfg.pump_shape == "gaussian":
        if (cfg.tau is None) == (cfg.bandwidth_nm is None):
            raise ConfigError("gaussian pump needs exactly one of tau_s / bandwidth_nm")
        tau = cfg.tau if cfg.tau is not None else bandwidth_to_tau(
            cfg.bandwidth_nm * 1e-9, params.lambda_p0
        )
        halfwidth = 4.0 * tau
        scale = tau
    else:
        if cfg.duration is None:
            raise ConfigError("square pump needs duration_s")
        tau = cfg.duration
        halfwidth = 0.5 * cfg.duration + cfg.edge_smoothing
        scale = cfg.duration / math.sqrt(6.0)

    pad = 0.0
    if cfg.prechirp_length is not None:
        # Fresnel tails of a chirped hard edge decay like sqrt(beta2 l)/t;
        # this pad keeps them below the coverage threshold at the window edge.
        pad = 100.0 * math.sqrt(abs(params.beta2_p * cfg.prechirp_length))
    dt_cap = None
    beta_max = max(abs(params.beta1_s), abs(params.beta1_i))
    if cfg.model == "analytic_jsa" and cfg.jsa_window > 0.0 and beta_max > 0.0:
        # the pump spectrum must cover the sum detunings of the fixed
        # observation window regardless of the pump duration
        dt_cap = beta_max * params.length / (2.0 * cfg.jsa_window)
    grid = auto_grid(params, scale, halfwidth, n=cfg.grid_n, dt=cfg.grid_dt,
                     pad=pad, dt_cap=dt_cap)

    steps = None
    if cfg.model == "ssf":
        steps = cfg.ssf_steps if cfg.ssf_steps is not None else auto_steps(params, grid)

    return ResolvedRun(
        model=cfg.model,
        preset_name=cfg.preset if cfg.fiber is None else None,
        preset_version=preset_version,
        params=params,
        pump_shape=cfg.pump_shape,
        tau=tau,
        edge_smoothing=cfg.edge_smoothing,
        prechirp_length=cfg.prechirp_length,
        grid=grid,
        ssf_steps=steps,
        include_beta2=cfg.include_beta2,
        cw_power=cfg.cw_power,
        jsa_window=cfg.jsa_window,
        rates=cfg.rates,
        powers=cfg.powers,
        filter_axis=cfg.filter_axis,
        filter_widths=cfg.filter_widths,
        filter_center=cfg.filter_center,
        out_dir=cfg.out_dir,
    )


# --- config file I/O -------------------------------------------------------

_FIBER_KEYS = (
    "length_m", "beta1_s", "beta1_i", "beta2_p", "beta2_s", "beta2_i",
    "gamma_p", "gamma_s", "gamma_i", "lambda_p0", "lambda_s0", "lambda_i0",
)

_SCHEMA: dict[str, tuple[str, ...]] = {
    "run": ("model", "preset", "rates", "powers", "out", "include_beta2",
            "cw_power_w", "jsa_window"),
    "fiber": _FIBER_KEYS,
    "pump": ("shape", "tau_s", "duration_s", "bandwidth_nm",
             "edge_smoothing_s", "prechirp_length_m"),
    "grid": ("n", "dt_s"),
    "ssf": ("steps",),
    "filter": ("axis", "widths_rad_s", "center_rad_s"),
    "provenance": (),  # written by export, ignored on load
}


def _float_list(text: str) -> tuple[float, ...]:
    items = [s for chunk in text.split(",") for s in chunk.split()]
    if not items:
        raise ConfigError(f"empty number list: {text!r}")
    return tuple(float(s) for s in items)


def _get_float(section, key) -> float | None:
    if key not in section or section[key].strip() in ("", "auto"):
        return None
    return float(section[key])


def _get_int(section, key) -> int | None:
    if key not in section or section[key].strip() in ("", "auto"):
        return None
    return int(section[key])


def _parser() -> configparser.ConfigParser:
    return configparser.ConfigParser(inline_comment_prefixes=("#", ";"))


def load_config(path: str) -> RunConfig:
    """Parse a config (or exported metadata) file; unknown keys are errors."""
    parser = _parser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc

    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}] in {path}")
        if section == "provenance":
            continue
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}] of {path}")

    cfg = RunConfig()
    if parser.has_section("run"):
        run = parser["run"]
        cfg = replace(
            cfg,
            model=run.get("model", cfg.model),
            preset=run.get("preset", cfg.preset) or None,
            out_dir=run.get("out", cfg.out_dir),
            include_beta2=run.getboolean("include_beta2", cfg.include_beta2),
            cw_power=run.getfloat("cw_power_w", cfg.cw_power),
            jsa_window=run.getfloat("jsa_window", cfg.jsa_window),
        )
        if "rates" in run:
            cfg = replace(cfg, rates=_float_list(run["rates"]))
        if "powers" in run:
            cfg = replace(cfg, powers=_float_list(run["powers"]))

    if parser.has_section("fiber"):
        fib = parser["fiber"]
        keys = set(fib.keys())
        if keys == {"length_m"}:
            cfg = replace(cfg, length=float(fib["length_m"]))
        elif keys == set(_FIBER_KEYS):
            cfg = replace(cfg, preset=None, fiber=FiberParams(
                length=float(fib["length_m"]),
                beta1_s=float(fib["beta1_s"]),
                beta1_i=float(fib["beta1_i"]),
                beta2_p=float(fib["beta2_p"]),
                beta2_s=float(fib["beta2_s"]),
                beta2_i=float(fib["beta2_i"]),
                gamma_p=float(fib["gamma_p"]),
                gamma_s=float(fib["gamma_s"]),
                gamma_i=float(fib["gamma_i"]),
                lambda_p0=float(fib["lambda_p0"]),
                lambda_s0=float(fib["lambda_s0"]),
                lambda_i0=float(fib["lambda_i0"]),
            ))
        else:
            raise ConfigError(
                "[fiber] must give either length_m alone (preset override) "
                "or the complete parameter set"
            )

    if parser.has_section("pump"):
        pmp = parser["pump"]
        cfg = replace(
            cfg,
            pump_shape=pmp.get("shape", cfg.pump_shape),
            tau=_get_float(pmp, "tau_s"),
            duration=_get_float(pmp, "duration_s"),
            bandwidth_nm=_get_float(pmp, "bandwidth_nm"),
            edge_smoothing=pmp.getfloat("edge_smoothing_s", cfg.edge_smoothing),
            prechirp_length=_get_float(pmp, "prechirp_length_m"),
        )

    if parser.has_section("grid"):
        cfg = replace(cfg, grid_n=_get_int(parser["grid"], "n"),
                      grid_dt=_get_float(parser["grid"], "dt_s"))
    if parser.has_section("ssf"):
        cfg = replace(cfg, ssf_steps=_get_int(parser["ssf"], "steps"))
    if parser.has_section("filter"):
        flt = parser["filter"]
        cfg = replace(cfg, filter_axis=flt.get("axis", cfg.filter_axis),
                      filter_center=_get_float(flt, "center_rad_s"))
        if "widths_rad_s" in flt:
            cfg = replace(cfg, filter_widths=_float_list(flt["widths_rad_s"]))
    return cfg


def metadata_text(run: ResolvedRun, tool_version: str) -> str:
    """Render the resolved run as config-file text (reload-compatible)."""
    parser = _parser()
    f = lambda v: f"{v:.17g}"

    parser["run"] = {"model": run.model}
    if run.preset_name is not None:
        parser["run"]["preset"] = run.preset_name
    if run.rates is not None:
        parser["run"]["rates"] = ", ".join(f(r) for r in run.rates)
    if run.powers is not None:
        parser["run"]["powers"] = ", ".join(f(p) for p in run.powers)
    parser["run"]["out"] = run.out_dir
    parser["run"]["include_beta2"] = str(run.include_beta2).lower()
    parser["run"]["cw_power_w"] = f(run.cw_power)
    parser["run"]["jsa_window"] = f(run.jsa_window)

    p = run.params
    if run.preset_name is None:
        parser["fiber"] = {
            "length_m": f(p.length),
            "beta1_s": f(p.beta1_s), "beta1_i": f(p.beta1_i),
            "beta2_p": f(p.beta2_p), "beta2_s": f(p.beta2_s), "beta2_i": f(p.beta2_i),
            "gamma_p": f(p.gamma_p), "gamma_s": f(p.gamma_s), "gamma_i": f(p.gamma_i),
            "lambda_p0": f(p.lambda_p0), "lambda_s0": f(p.lambda_s0),
            "lambda_i0": f(p.lambda_i0),
        }
    else:
        parser["fiber"] = {"length_m": f(p.length)}

    parser["pump"] = {"shape": run.pump_shape}
    if run.pump_shape == "gaussian":
        parser["pump"]["tau_s"] = f(run.tau)
    else:
        parser["pump"]["duration_s"] = f(run.tau)
        parser["pump"]["edge_smoothing_s"] = f(run.edge_smoothing)
    if run.prechirp_length is not None:
        parser["pump"]["prechirp_length_m"] = f(run.prechirp_length)

    parser["grid"] = {"n": str(run.grid.n_points), "dt_s": f(run.grid.dt)}
    if run.ssf_steps is not None:
        parser["ssf"] = {"steps": str(run.ssf_steps)}
    if run.filter_widths is not None:
        parser["filter"] = {"axis": run.filter_axis,
                            "widths_rad_s": ", ".join(f(w) for w in run.filter_widths)}
        if run.filter_center is not None:
            parser["filter"]["center_rad_s"] = f(run.filter_center)

    parser["provenance"] = {"tool": "fwmpair", "tool_version": tool_version}
    if run.preset_version is not None:
        parser["provenance"]["preset_version"] = run.preset_version

    lines: list[str] = []
    for section in parser.sections():
        lines.append(f"[{section}]")
        for key, value in parser[section].items():
            lines.append(f"{key} = {value}")
        lines.append("")
    return "\n".join(lines)
