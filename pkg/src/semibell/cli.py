"""Command-line front end: single-point evaluation, kappa sweeps, settings
search, Monte Carlo validation, and figure-reproduction datasets."""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from .fields import (
    Detector,
    EntangledState,
    FieldState,
    MeasurementSettings,
    SeparableState,
    amplitude_scale_sq,
    probability_set,
)
from .inequalities import ch_report, nonlinear_report
from .montecarlo import CHANNELS, McConfig, simulate_probability_set
from .presets import (
    FIG3_SEPARABLE,
    FIG4_SEPARABLE,
    MAX_ENTANGLED,
    SETTINGS_PRESETS,
    settings_preset,
)
from .sweep import OBJECTIVE_KINDS, SweepRow, SweepSpec, kappa_sweep, search_settings

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_IO = 3

CSV_COLUMNS = (
    "kappa", "c_value", "ch_lower", "ch_upper",
    "cnl_value", "cnl_lower", "cnl_upper", "violated_ch", "violated_nl",
)


class ConfigError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semibell",
        description="Semiclassical Bell tests: classical fields, click "
                    "detectors, CH and nonlinear criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, need_settings: bool = True):
        p.add_argument("--config", help="JSON file with option values; flags override")
        p.add_argument("--state", choices=["entangled", "separable"])
        p.add_argument("--a1", type=float, help="entangled amplitude of mode |1>|up>")
        p.add_argument("--am1", type=float, help="entangled amplitude of mode |-1>|right>")
        p.add_argument("--amp", type=float, help="separable amplitude")
        p.add_argument("--alpha0", type=float, help="separable spatial direction")
        p.add_argument("--beta0", type=float, help="separable polarization direction")
        p.add_argument("--kappa", type=float, help="mean photocount gain*eps^2")
        p.add_argument("--gain", type=float, help="detector gain eta*T (alternative to --kappa)")
        p.add_argument("--degrees", action="store_true",
                       help="interpret all angle options in degrees")
        p.add_argument("--tolerance", type=float, help="violation tolerance (default 1e-12)")
        if need_settings:
            p.add_argument("--preset", choices=sorted(SETTINGS_PRESETS),
                           help="named measurement settings")
            for name in ("x", "y", "u", "v"):
                p.add_argument(f"--{name}", type=float, help=f"analyzer angle {name}")

    p_eval = sub.add_parser("eval", help="evaluate one configuration")
    add_common(p_eval)
    p_eval.add_argument("--json", dest="json_out", help="write JSON report to path ('-' = stdout)")

    p_sweep = sub.add_parser("sweep", help="sweep kappa and emit CSV")
    add_common(p_sweep)
    p_sweep.add_argument("--kappa-min", type=float)
    p_sweep.add_argument("--kappa-max", type=float)
    p_sweep.add_argument("--points", type=int)
    p_sweep.add_argument("--scale", choices=["linear", "logarithmic"])
    p_sweep.add_argument("--output", help="CSV output path ('-' = stdout)")
    p_sweep.add_argument("--plot", help="also render the C(kappa) curve to this file")

    p_search = sub.add_parser("search", help="search settings for maximal violation")
    add_common(p_search, need_settings=False)
    p_search.add_argument("--objective", choices=list(OBJECTIVE_KINDS))
    p_search.add_argument("--grid-points", type=int)
    p_search.add_argument("--threads", type=int, help="worker bound (does not affect results)")
    p_search.add_argument("--json", dest="json_out")

    p_mc = sub.add_parser("mc", help="Monte Carlo validation of the click probabilities")
    add_common(p_mc)
    p_mc.add_argument("--trials", type=int)
    p_mc.add_argument("--seed", type=int)
    p_mc.add_argument("--batch", type=int)
    p_mc.add_argument("--threads", type=int)
    p_mc.add_argument("--sampler", choices=["poisson", "bernoulli"])
    p_mc.add_argument("--json", dest="json_out")

    p_rep = sub.add_parser("reproduce", help="emit a figure-reproduction dataset")
    p_rep.add_argument("target",
                       choices=["fig2", "fig3", "fig4", "nl-separable", "nl-entangled"])
    p_rep.add_argument("--outdir", default=".")
    p_rep.add_argument("--points", type=int, default=200)
    p_rep.add_argument("--no-plot", action="store_true", help="skip figure rendering")

    return parser


def _apply_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    try:
        raw = json.loads(Path(args.config).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {k for k in vars(args) if k not in ("command", "config")}
    for key, value in raw.items():
        dest = key.replace("-", "_")
        if dest not in known:
            raise ConfigError(f"unknown config field: {key}")
        if getattr(args, dest) in (None, False):  # flags override file values
            setattr(args, dest, value)


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def _resolve_state(args: argparse.Namespace) -> FieldState:
    kind = args.state or "entangled"
    if kind == "entangled":
        for bad in ("amp", "alpha0", "beta0"):
            if getattr(args, bad) is not None:
                raise ConfigError(f"--{bad} is a separable-state option")
        a1 = 1.0 if args.a1 is None else args.a1
        am1 = 1.0 if args.am1 is None else args.am1
        return EntangledState(a1, am1)
    for bad in ("a1", "am1"):
        if getattr(args, bad) is not None:
            raise ConfigError(f"--{bad} is an entangled-state option")
    if args.alpha0 is None or args.beta0 is None:
        raise ConfigError("separable state requires --alpha0 and --beta0")
    return SeparableState(
        1.0 if args.amp is None else args.amp,
        _angle(args.alpha0, args.degrees),
        _angle(args.beta0, args.degrees),
    )


def _resolve_settings(args: argparse.Namespace) -> MeasurementSettings:
    explicit = [getattr(args, n) for n in ("x", "y", "u", "v")]
    if args.preset is not None:
        if any(a is not None for a in explicit):
            raise ConfigError("give either --preset or explicit --x/--y/--u/--v, not both")
        return settings_preset(args.preset)
    if all(a is not None for a in explicit):
        return MeasurementSettings.from_angles(
            *(_angle(a, args.degrees) for a in explicit)
        )
    if any(a is not None for a in explicit):
        missing = [n for n in ("x", "y", "u", "v") if getattr(args, n) is None]
        raise ConfigError(f"incomplete settings: missing --{', --'.join(missing)}")
    return settings_preset("fig2-settings")


def _resolve_detector(args: argparse.Namespace, state: FieldState) -> Detector:
    if args.kappa is not None and args.gain is not None:
        raise ConfigError("give either --kappa or --gain, not both")
    if args.gain is not None:
        return Detector(args.gain)
    kappa = 1.0 if args.kappa is None else args.kappa
    if kappa < 0:
        raise ConfigError(f"--kappa must be >= 0, got {kappa}")
    eps2 = amplitude_scale_sq(state)
    if eps2 == 0.0:
        if kappa != 0.0:
            raise ConfigError("--kappa > 0 impossible for a zero-amplitude state")
        return Detector(0.0)
    return Detector(kappa / eps2)


def _state_dict(state: FieldState) -> dict:
    if isinstance(state, EntangledState):
        return {"variant": "entangled", "a1": state.a1, "am1": state.am1}
    return {"variant": "separable", "amp": state.amp,
            "alpha0": state.alpha0, "beta0": state.beta0}


def _eval_payload(state, settings, detector, tolerance) -> dict:
    probs = probability_set(state, settings, detector)
    ch = ch_report(state, settings, detector, tolerance)
    nl = nonlinear_report(state, settings, detector, tolerance)
    x, y, u, v = settings.angles()
    return {
        "input": {
            "state": _state_dict(state),
            "settings": {"x": x, "y": y, "u": u, "v": v},
            "gain": detector.gain,
            "tolerance": tolerance,
        },
        "kappa": probs.kappa,
        "kappa_nominal": ch.kappa_nominal,
        "probabilities": probs.as_dict(),
        "ch": {
            "value": ch.c_value,
            "lower": ch.lower_bound,
            "upper": ch.upper_bound,
            "violated_upper": ch.violated_upper,
            "violated_lower": ch.violated_lower,
        },
        "nonlinear": {
            "value": nl.cnl_value,
            "lower": nl.lower_bound,
            "upper": nl.upper_bound,
            "violated": nl.violated,
        },
    }


def _write_json(payload: dict, path: str) -> None:
    text = json.dumps(payload, indent=2)
    if path == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n")


def _cmd_eval(args) -> int:
    state = _resolve_state(args)
    settings = _resolve_settings(args)
    detector = _resolve_detector(args, state)
    tolerance = 1e-12 if args.tolerance is None else args.tolerance
    payload = _eval_payload(state, settings, detector, tolerance)

    kappa_label = "kappa (nominal)" if payload["kappa_nominal"] else "kappa"
    print(f"{kappa_label}: {_fmt(payload['kappa'])}")
    if payload["kappa"] == 0.0:
        print("note: kappa = 0, all probabilities vanish (degenerate boundary case)")
    for name, value in payload["probabilities"].items():
        print(f"  {name} = {_fmt(value)}")
    ch = payload["ch"]
    flags = []
    if ch["violated_upper"]:
        flags.append("VIOLATES upper bound 0")
    if ch["violated_lower"]:
        flags.append("VIOLATES lower bound -1")
    print(f"CH: C = {_fmt(ch['value'])}  bounds [{_fmt(ch['lower'])}, {_fmt(ch['upper'])}]"
          + (f"  {'; '.join(flags)}" if flags else "  (satisfied)"))
    nl = payload["nonlinear"]
    print(f"nonlinear: C = {_fmt(nl['value'])}  bounds "
          f"[{_fmt(nl['lower'])}, {_fmt(nl['upper'])}]"
          + ("  VIOLATED" if nl["violated"] else "  (satisfied)"))
    if args.json_out:
        _write_json(payload, args.json_out)
    return EXIT_OK


def _rows_to_csv(rows: list[SweepRow], fh) -> None:
    writer = csv.writer(fh)
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([
            _fmt(r.kappa), _fmt(r.c_value), _fmt(-1.0), _fmt(0.0),
            _fmt(r.cnl_value), _fmt(r.cnl_lower), _fmt(1.0),
            "true" if r.violated_ch else "false",
            "true" if r.violated_nl else "false",
        ])


def _write_rows(rows: list[SweepRow], path: str) -> None:
    if path == "-":
        _rows_to_csv(rows, sys.stdout)
        return
    with open(path, "w", newline="") as fh:
        _rows_to_csv(rows, fh)


def _cmd_sweep(args) -> int:
    state = _resolve_state(args)
    settings = _resolve_settings(args)
    try:
        spec = SweepSpec(
            kappa_min=0.0 if args.kappa_min is None else args.kappa_min,
            kappa_max=10.0 if args.kappa_max is None else args.kappa_max,
            points=100 if args.points is None else args.points,
            scale=args.scale or "linear",
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    tolerance = 1e-12 if args.tolerance is None else args.tolerance
    rows = kappa_sweep(state, settings, spec, tolerance)
    _write_rows(rows, args.output or "-")
    if args.plot:
        from .plots import render_ch_figure
        render_ch_figure({"sweep": rows}, args.plot)
    return EXIT_OK


def _cmd_search(args) -> int:
    state = _resolve_state(args)
    kappa = 1.0 if args.kappa is None else args.kappa
    if kappa <= 0:
        raise ConfigError(f"search requires --kappa > 0, got {kappa}")
    if args.gain is not None:
        raise ConfigError("search takes --kappa, not --gain")
    result = search_settings(
        state, kappa,
        objective_kind=args.objective or "max-c",
        grid_points=args.grid_points or 24,
    )
    x, y, u, v = result.settings.angles()
    print(f"objective ({result.objective_kind}): {_fmt(result.objective)}")
    print(f"settings: x={_fmt(x)} y={_fmt(y)} u={_fmt(u)} v={_fmt(v)}")
    print(f"evaluations: {result.evaluations}")
    if args.json_out:
        _write_json({
            "objective": result.objective,
            "objective_kind": result.objective_kind,
            "settings": {"x": x, "y": y, "u": u, "v": v},
            "evaluations": result.evaluations,
            "kappa": kappa,
        }, args.json_out)
    return EXIT_OK


def _cmd_mc(args) -> int:
    state = _resolve_state(args)
    settings = _resolve_settings(args)
    detector = _resolve_detector(args, state)
    try:
        cfg = McConfig(
            trials=10**6 if args.trials is None else args.trials,
            master_seed=0 if args.seed is None else args.seed,
            batch=args.batch or 65536,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    estimates = simulate_probability_set(
        state, settings, detector, cfg,
        threads=args.threads or 1, sampler=args.sampler or "poisson",
    )
    analytic = probability_set(state, settings, detector).as_dict()
    worst = 0.0
    rows = []
    print(f"{'channel':8s} {'analytic':>22s} {'estimate':>22s} {'stderr':>12s} {'z':>8s}")
    for name in CHANNELS:
        est = estimates[name]
        z = est.z_score(analytic[name])
        worst = max(worst, abs(z))
        print(f"{name:8s} {analytic[name]:22.15g} {est.p_hat:22.15g} "
              f"{est.stderr:12.5g} {z:8.3f}")
        rows.append({"channel": name, "analytic": analytic[name],
                     "estimate": est.p_hat, "stderr": est.stderr, "z": z})
    ok = worst <= 5.0
    print(f"max |z| = {worst:.3f} -> {'PASS' if ok else 'FAIL'}")
    if args.json_out:
        _write_json({"channels": rows, "max_abs_z": worst, "pass": ok,
                     "trials": cfg.trials, "seed": cfg.master_seed}, args.json_out)
    return EXIT_OK if ok else EXIT_VALIDATION


REPRODUCTIONS = {
    # target: (list of (label, state, preset), sweep spec, nl-style plot)
    "fig2": ([("entangled", MAX_ENTANGLED, "fig2-settings")],
             SweepSpec(1e-3, 10.0, 200, "logarithmic"), False),
    "fig3": ([("separable", FIG3_SEPARABLE, "fig2-settings")],
             SweepSpec(0.01, 10.0, 200, "linear"), False),
    "fig4": ([("entangled", MAX_ENTANGLED, "fig4-settings"),
              ("separable", FIG4_SEPARABLE, "fig4-settings")],
             SweepSpec(0.01, 10.0, 200, "linear"), False),
    "nl-separable": ([("separable", FIG3_SEPARABLE, "fig2-settings")],
                     SweepSpec(0.01, 10.0, 200, "linear"), True),
    "nl-entangled": ([("entangled", MAX_ENTANGLED, "nl-entangled")],
                     SweepSpec(0.01, 5.0, 200, "linear"), True),
}


def _cmd_reproduce(args) -> int:
    curves_spec, base_spec, nl_plot = REPRODUCTIONS[args.target]
    spec = SweepSpec(base_spec.kappa_min, base_spec.kappa_max,
                     args.points, base_spec.scale)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = args.target.replace("-", "_")
    curves: dict[str, list[SweepRow]] = {}
    for label, state, preset in curves_spec:
        rows = kappa_sweep(state, settings_preset(preset), spec)
        curves[label] = rows
        suffix = f"_{label}" if len(curves_spec) > 1 else ""
        csv_path = outdir / f"{stem}{suffix}.csv"
        _write_rows(rows, str(csv_path))
        print(f"wrote {csv_path}")
    if not args.no_plot:
        from .plots import render_ch_figure, render_nl_figure
        fig_path = outdir / f"{stem}.png"
        if nl_plot:
            render_nl_figure(curves, fig_path, title=args.target)
        else:
            render_ch_figure(curves, fig_path, title=args.target)
        print(f"wrote {fig_path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        handler = {
            "eval": _cmd_eval,
            "sweep": _cmd_sweep,
            "search": _cmd_search,
            "mc": _cmd_mc,
            "reproduce": _cmd_reproduce,
        }[args.command]
        return handler(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
