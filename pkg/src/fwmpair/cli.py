"""Command-line interface.

Subcommands: jsa, jta, ssf (single-parameter-point states), sweep
(purity vs rate), optimize-tau, filter-sweep, and presets.  Every run writes
CSV tables plus a reloadable run_metadata.ini; report figures (PNG) are
rendered next to the CSV unless --no-plot is given.

Exit codes: 0 success, 2 configuration error, 3 numerical/coverage error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .errors import ConfigError, SimulationError
from .filtering import purity_vs_effective_rate
from .grid import Domain, dual_grid, transform_2d
from .presets import list_presets
from .runconfig import RunConfig, load_config, resolve
from .schmidt import purity_of
from .sweeps import (
    export_run,
    optimize_tau,
    purity_vs_rate,
    state_at_rate,
    visibility_bound,
    write_rows_csv,
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="config file (see README for the format)")
    parser.add_argument("--preset", help="fiber preset name")
    parser.add_argument("--length", type=float, help="fiber length override (m)")
    parser.add_argument("--tau", type=float,
                        help="pump duration (s): Gaussian tau, or square duration")
    parser.add_argument("--bandwidth-nm", type=float,
                        help="pump bandwidth (nm FWHM), alternative to --tau")
    parser.add_argument("--steps", type=int, help="split-step count override")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--no-plot", action="store_true",
                        help="skip rendering PNG figures")


def _assemble(args, model: str | None = None) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if model is not None:
        cfg = replace(cfg, model=model)
    if args.preset:
        cfg = replace(cfg, preset=args.preset, fiber=None)
    if args.length is not None:
        cfg = replace(cfg, length=args.length)
    if args.tau is not None:
        if cfg.pump_shape == "square":
            cfg = replace(cfg, duration=args.tau)
        else:
            cfg = replace(cfg, tau=args.tau, bandwidth_nm=None)
    if args.bandwidth_nm is not None:
        cfg = replace(cfg, bandwidth_nm=args.bandwidth_nm, tau=None)
    if args.steps is not None:
        cfg = replace(cfg, ssf_steps=args.steps)
    if args.out:
        cfg = replace(cfg, out_dir=args.out)
    rate = getattr(args, "rate", None)
    if rate is not None:
        cfg = replace(cfg, rates=(rate,), powers=None)
    rates = getattr(args, "rates", None)
    if rates:
        cfg = replace(cfg, rates=tuple(float(r) for r in rates.split(",")), powers=None)
    return cfg


def _cmd_point(args, model: str) -> int:
    cfg = _assemble(args, model)
    if model == "analytic_jsa":
        if args.include_beta2:
            cfg = replace(cfg, include_beta2=True)
        if args.cw_power is not None:
            cfg = replace(cfg, cw_power=args.cw_power)
    if cfg.rates is None:
        cfg = replace(cfg, rates=(0.0,))
    run = resolve(cfg)
    rate = cfg.rates[0]
    state, power, measured = state_at_rate(run, rate)
    pur = purity_of(state)
    upper, lower = visibility_bound(pur, max(measured, 0.0))
    rows = [{
        "model": run.model,
        "rate_target": rate,
        "rate_measured": measured,
        "power_w": power,
        "purity": pur,
        "visibility_upper": upper,
        "visibility_lower": lower,
        "status": "ok",
        "error": "",
    }]
    label = "jta" if state.domain is Domain.TIME else "jsa"
    paths = export_run(rows, cfg, name=model, matrices={label: state})
    if not args.no_plot:
        from .report import save_joint_amplitude_figure

        fig_path = os.path.join(os.path.dirname(paths["table"]), f"{label}.png")
        paths["figure"] = save_joint_amplitude_figure(
            state, fig_path, title=f"{run.model}, R = {measured:.3g}"
        )
    print(f"model={run.model} rate={measured:.6g} power={power:.6g} W purity={pur:.6f}")
    for kind, path in paths.items():
        print(f"  {kind}: {path}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _assemble(args, args.model)
    if cfg.rates is None and cfg.powers is None:
        raise ConfigError("sweep needs --rates or a rate/power list in the config")
    rows = purity_vs_rate(cfg)
    paths = export_run(rows, cfg, name="sweep")
    if not args.no_plot:
        from .report import save_purity_vs_rate_figure

        fig_path = os.path.join(os.path.dirname(paths["table"]), "purity_vs_rate.png")
        paths["figure"] = save_purity_vs_rate_figure(rows, fig_path, title=cfg.model)
    for row in rows:
        if row["status"] == "ok":
            print(f"R={row['rate_target']:.6g} purity={row['purity']:.6f}")
        else:
            print(f"R={row['rate_target']:.6g} ERROR {row['error']}")
    for kind, path in paths.items():
        print(f"  {kind}: {path}")
    return 0


def _cmd_optimize_tau(args) -> int:
    cfg = _assemble(args)
    bracket = None
    if args.tau_min is not None and args.tau_max is not None:
        bracket = (args.tau_min, args.tau_max)
    result = optimize_tau(cfg, args.rate, bracket=bracket)
    run = resolve(cfg)
    os.makedirs(run.out_dir, exist_ok=True)
    trace_rows = [{"tau_s": t, "purity": p} for t, p in result.trace]
    trace_path = os.path.join(run.out_dir, "optimize_tau_trace.csv")
    write_rows_csv(trace_rows, trace_path)
    summary = [{
        "model": run.model,
        "rate_target": args.rate,
        "tau_opt_s": result.tau,
        "purity": result.purity,
        "at_boundary": result.at_boundary,
        "status": "ok",
        "error": "",
    }]
    paths = export_run(summary, cfg, name="optimize_tau")
    paths["trace"] = trace_path
    if not args.no_plot:
        from .report import save_tau_trace_figure

        fig_path = os.path.join(run.out_dir, "optimize_tau.png")
        paths["figure"] = save_tau_trace_figure(
            result.trace, fig_path, title=f"{run.model}, R = {args.rate:g}"
        )
    print(f"tau_opt={result.tau:.6e} s purity={result.purity:.6f} "
          f"boundary={result.at_boundary}")
    for kind, path in paths.items():
        print(f"  {kind}: {path}")
    return 0


def _cmd_filter_sweep(args) -> int:
    cfg = _assemble(args, args.model)
    if cfg.rates is None:
        raise ConfigError("filter sweep needs --rates or a rate list in the config")
    run = resolve(cfg)

    def builder(rate: float):
        state, _, _ = state_at_rate(run, rate)
        if state.domain is Domain.TIME:
            state = transform_2d(state)
        return state

    widths = cfg.filter_widths
    if widths is None:
        sgrid = dual_grid(run.grid)
        lo, hi = 2.0 * sgrid.d_omega, sgrid.span
        count = args.n_widths
        widths = tuple(lo * (hi / lo) ** (k / (count - 1)) for k in range(count))
        cfg = replace(cfg, filter_widths=widths)
    rows = purity_vs_effective_rate(
        builder, cfg.rates, widths, axis=cfg.filter_axis, center=cfg.filter_center
    )
    paths = export_run(rows, cfg, name="filter_sweep")
    if not args.no_plot:
        from .report import save_filter_curves_figure

        fig_path = os.path.join(os.path.dirname(paths["table"]), "filter_sweep.png")
        paths["figure"] = save_filter_curves_figure(rows, fig_path)
    print(f"{len(rows)} filter points written")
    for kind, path in paths.items():
        print(f"  {kind}: {path}")
    return 0


def _cmd_presets(args) -> int:
    if args.action != "list":
        raise ConfigError(f"unknown presets action {args.action!r}")
    for preset in list_presets():
        p = preset.params
        print(f"{preset.name} (v{preset.version}): {preset.description}")
        print(f"  L={p.length} m  beta1_s={p.beta1_s:g}  beta1_i={p.beta1_i:g} s/m")
        print(f"  beta2 (p,s,i) = ({p.beta2_p:g}, {p.beta2_s:g}, {p.beta2_i:g}) s^2/m")
        print(f"  gamma (p,s,i) = ({p.gamma_p:g}, {p.gamma_s:g}, {p.gamma_i:g}) /W/m")
        print(f"  lambda (p,s,i) = ({p.lambda_p0*1e9:.3f}, {p.lambda_s0*1e9:.3f}, "
              f"{p.lambda_i0*1e9:.3f}) nm")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fwmpair",
        description="Photon-pair joint amplitudes from pulsed four-wave mixing",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, model in (("jsa", "analytic_jsa"), ("jta", "analytic_jta"), ("ssf", "ssf")):
        sp = sub.add_parser(name, help=f"build one {name.upper()} state and export it")
        _add_common(sp)
        sp.add_argument("--rate", type=float, default=None,
                        help="target generation rate (default 0 = phases off)")
        if name == "jsa":
            sp.add_argument("--include-beta2", action="store_true",
                            help="second-order dispersion terms in the phase mismatch")
            sp.add_argument("--cw-power", type=float, default=None,
                            help="continuous-wave nonlinear mismatch power (W)")
        sp.set_defaults(func=lambda a, m=model: _cmd_point(a, m))

    sp = sub.add_parser("sweep", help="purity vs generation rate")
    _add_common(sp)
    sp.add_argument("--model", default="analytic_jta",
                    choices=["analytic_jsa", "analytic_jta", "ssf"])
    sp.add_argument("--rates", help="comma-separated rate list")
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("optimize-tau", help="pump duration maximizing purity")
    _add_common(sp)
    sp.add_argument("--rate", type=float, default=0.0)
    sp.add_argument("--tau-min", type=float, help="bracket lower edge (s)")
    sp.add_argument("--tau-max", type=float, help="bracket upper edge (s)")
    sp.set_defaults(func=_cmd_optimize_tau)

    sp = sub.add_parser("filter-sweep", help="herald filtering: purity vs R T")
    _add_common(sp)
    sp.add_argument("--model", default="analytic_jta",
                    choices=["analytic_jsa", "analytic_jta", "ssf"])
    sp.add_argument("--rates", help="comma-separated unfiltered rate list")
    sp.add_argument("--n-widths", type=int, default=12,
                    help="auto width count when the config gives none")
    sp.set_defaults(func=_cmd_filter_sweep)

    sp = sub.add_parser("presets", help="preset inspection")
    sp.add_argument("action", choices=["list"])
    sp.set_defaults(func=_cmd_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
