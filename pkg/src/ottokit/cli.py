"""Command-line front end emitting figure-ready CSV/JSON artifacts.

Subcommands map one-to-one onto the library's figure-level claims:

    engine-curves    efficiency-at-optimum curves vs eta_C (plus inset deltas)
    fridge-curves    COP-at-optimum curves vs zeta_C
    loss-compare     fractional work loss and work-ratio curves vs eta_C
    bound-histogram  Monte Carlo bound verification (CSV + JSON sidecar)
    lambda           nonadiabaticity factor of shipped ramps vs duration
    cycle            single-cycle energetics as JSON

Exit codes: 0 success, 2 argument error, 3 domain/validity error (with a
machine-readable JSON object on stderr naming the violated precondition).
Output is byte-identical for identical arguments, including the seed and
thread count of bound-histogram.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import dynamics, engine, refrigerator, sampling
from .cycle import (
    Adiabaticity,
    Drive,
    Frequencies,
    OperationMode,
    Reservoirs,
    TempRegime,
    cop,
    efficiency,
    heats_and_work,
    operation_mode,
)
from .errors import OttoError

DEFAULT_ETA_GRID = "0.005:0.995:181"
DEFAULT_ZETA_GRID = "0.05:20:181"


def fmt(x: float, precision: int) -> str:
    """Shortest-round-trip float display truncated to significant digits."""
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.{precision}g}"


def _parse_grid(text: str) -> np.ndarray:
    try:
        lo_s, hi_s, n_s = text.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:n, got {text!r}")
    if not (lo < hi and n >= 2):
        raise argparse.ArgumentTypeError(f"grid needs lo < hi and n >= 2, got {text!r}")
    return np.linspace(lo, hi, n)


def _parse_durations(text: str):
    try:
        vals = [float(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"durations must be comma-separated floats, got {text!r}")
    if not vals or any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("durations must be positive")
    return vals


def _precision(value: str) -> int:
    p = int(value)
    if not (6 <= p <= 17):
        raise argparse.ArgumentTypeError(f"precision must be in [6, 17], got {p}")
    return p


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_csv(path: str, header, rows, precision: int):
    out, close = _open_out(path)
    try:
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(fmt(v, precision) if isinstance(v, float) else str(v)
                               for v in row) + "\n")
    finally:
        if close:
            out.close()


def _json_ready(obj, precision: int):
    if isinstance(obj, float):
        return float(fmt(obj, precision)) if not math.isnan(obj) else None
    if isinstance(obj, dict):
        return {k: _json_ready(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v, precision) for v in obj]
    return obj


def _write_json(path: str, payload: dict, precision: int):
    out, close = _open_out(path)
    try:
        json.dump(_json_ready(payload, precision), out, sort_keys=True, indent=2)
        out.write("\n")
    finally:
        if close:
            out.close()


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_engine_curves(args) -> int:
    header = ["eta_C", "eta_mew_ht", "eta_mew_lt", "eta_w_ht", "eta_w_lt",
              "eta_mew_ss", "eta_w_ss", "eta_ss_max",
              "delta_ad", "delta_ss", "delta_max_ss"]
    rows = []
    for eta_c in args.eta_c_grid:
        tau = 1.0 - eta_c
        mew_ht = engine.eta_mew_ht(eta_c)
        w_ht = engine.eta_w_ht(eta_c)
        mew_ss = engine.eta_mew_ss(tau)
        w_ss = engine.eta_w_ss(eta_c)
        max_ss = engine.eta_ss_max(eta_c)
        rows.append((float(eta_c), mew_ht, engine.eta_mew_lt(eta_c), w_ht,
                     engine.eta_w_lt(eta_c), mew_ss, w_ss, max_ss,
                     mew_ht - w_ht, mew_ss - w_ss, max_ss - w_ss))
    _write_csv(args.out, header, rows, args.precision)
    return 0


def _cmd_fridge_curves(args) -> int:
    header = ["zeta_C", "zeta_chi_ht", "zeta_chi_lt", "zeta_chi_ss", "zeta_max_ss"]
    rows = []
    for zeta_c in args.zeta_c_grid:
        tau = zeta_c / (1.0 + zeta_c)
        ss = refrigerator.zeta_chi_ss(tau) if zeta_c > 1.0 else math.nan
        max_ss = refrigerator.zeta_max_ss(zeta_c) if zeta_c >= 1.0 else math.nan
        rows.append((float(zeta_c), refrigerator.zeta_chi_ht(zeta_c),
                     refrigerator.zeta_chi_lt(zeta_c), ss, max_ss))
    _write_csv(args.out, header, rows, args.precision)
    return 0


def _cmd_loss_compare(args) -> int:
    header = ["eta_C", "R_ew_ad", "R_w_ad", "R_ew_ss", "R_w_ss",
              "work_ratio_ad", "work_ratio_ss"]
    taus = 1.0 - args.eta_c_grid
    ratio_ad = engine.work_ratio_curve(Drive.ADIABATIC, taus)
    ratio_ss = engine.work_ratio_curve(Drive.SUDDEN_SWITCH, taus)
    rows = []
    for i, eta_c in enumerate(args.eta_c_grid):
        tau = taus[i]
        r_ew_ss = eta_c / engine.eta_mew_ss(tau) - 1.0
        r_w_ss = eta_c / engine.eta_w_ss(eta_c) - 1.0
        rows.append((float(eta_c), engine.loss_ew_ad(eta_c), engine.loss_w_ad(eta_c),
                     r_ew_ss, r_w_ss, float(ratio_ad[i]), float(ratio_ss[i])))
    _write_csv(args.out, header, rows, args.precision)
    return 0


def _cmd_bound_histogram(args) -> int:
    spec = sampling.SampleSpec(beta_c=args.beta_c, beta_h=args.beta_h,
                               omega_min=args.omega_min, omega_max=args.omega_max,
                               n_samples=args.n, seed=args.seed,
                               bin_width=args.bin_width)
    if args.machine == "engine":
        hist = sampling.sample_engine_efficiencies(spec, threads=args.threads)
    else:
        hist = sampling.sample_fridge_cops(spec, threads=args.threads)
    _write_csv(args.out, ["bin_lo", "bin_hi", "count"],
               sampling.histogram_csv_rows(hist), args.precision)
    sidecar = os.path.splitext(args.out)[0] + ".json" if args.out != "-" else "-"
    _write_json(sidecar, sampling.sidecar_payload(spec, hist), args.precision)
    return 0


def _cmd_lambda(args) -> int:
    factory = dynamics.RAMP_FACTORIES[args.ramp]
    rows = []
    for duration in args.durations:
        ramp = factory(args.omega_c, args.omega_h, duration)
        result = dynamics.lambda_of_ramp(ramp, rtol=args.rtol, atol=args.rtol)
        rows.append((duration, result.value))
    _write_csv(args.out, ["T", "lambda"], rows, args.precision)
    return 0


def _cmd_cycle(args) -> int:
    r = Reservoirs(beta_c=args.beta_c, beta_h=args.beta_h)
    f = Frequencies(omega_c=args.omega_c, omega_h=args.omega_h)
    if args.drive == "adiabatic":
        lam = Adiabaticity.adiabatic()
    elif args.drive == "sudden":
        lam = Adiabaticity.sudden_switch(f)
    else:
        if args.duration is None:
            raise OttoError("ramp_duration", f"--duration is required for --drive {args.drive}")
        ramp = dynamics.RAMP_FACTORIES[args.drive](args.omega_c, args.omega_h,
                                                   args.duration)
        lam = Adiabaticity(dynamics.lambda_of_ramp(ramp).value, Drive.CUSTOM)
    regime = TempRegime(args.regime.replace("-", "_"))
    energetics = heats_and_work(r, f, lam, regime)
    mode = operation_mode(energetics)
    if args.require is not None and mode.value != args.require:
        raise OttoError("required_mode",
                        f"cycle operates as {mode.value}, required {args.require}")
    payload = {
        "beta_c": r.beta_c, "beta_h": r.beta_h,
        "omega_c": f.omega_c, "omega_h": f.omega_h,
        "lambda": lam.value, "regime": regime.value,
        "h_A": energetics.h_a, "h_B": energetics.h_b,
        "h_C": energetics.h_c, "h_D": energetics.h_d,
        "q_h": energetics.q_h, "q_c": energetics.q_c,
        "w_ext": energetics.w_ext, "w_in": energetics.w_in,
        "mode": mode.value,
        "efficiency": efficiency(energetics) if mode is OperationMode.ENGINE else None,
        "cop": cop(energetics) if mode is OperationMode.REFRIGERATOR else None,
    }
    _write_json(args.out, payload, args.precision)
    return 0


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ottokit",
        description="Harmonic Otto engine/refrigerator trade-off analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default="-", help="output path, '-' for stdout")
        p.add_argument("--precision", type=_precision, default=12,
                       help="significant digits, 6..17 (default 12)")

    p = sub.add_parser("engine-curves", help="efficiency-at-optimum curves vs eta_C")
    p.add_argument("--eta-c-grid", type=_parse_grid, default=DEFAULT_ETA_GRID,
                   help=f"lo:hi:n (default {DEFAULT_ETA_GRID})")
    add_common(p)
    p.set_defaults(func=_cmd_engine_curves)

    p = sub.add_parser("fridge-curves", help="COP-at-optimum curves vs zeta_C")
    p.add_argument("--zeta-c-grid", type=_parse_grid, default=DEFAULT_ZETA_GRID,
                   help=f"lo:hi:n (default {DEFAULT_ZETA_GRID})")
    add_common(p)
    p.set_defaults(func=_cmd_fridge_curves)

    p = sub.add_parser("loss-compare", help="fractional loss and work ratios vs eta_C")
    p.add_argument("--eta-c-grid", type=_parse_grid, default=DEFAULT_ETA_GRID,
                   help=f"lo:hi:n (default {DEFAULT_ETA_GRID})")
    add_common(p)
    p.set_defaults(func=_cmd_loss_compare)

    p = sub.add_parser("bound-histogram", help="Monte Carlo bound verification")
    p.add_argument("--machine", choices=["engine", "fridge"], required=True)
    p.add_argument("--beta-c", type=float, required=True)
    p.add_argument("--beta-h", type=float, required=True)
    p.add_argument("--omega-min", type=float, default=0.0)
    p.add_argument("--omega-max", type=float, default=30.0)
    p.add_argument("--n", type=int, required=True, help="number of samples")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bin-width", type=float, default=0.01)
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("OTTOKIT_THREADS", "1")),
                   help="worker threads (results are thread-count independent)")
    add_common(p)
    p.set_defaults(func=_cmd_bound_histogram)

    p = sub.add_parser("lambda", help="ramp nonadiabaticity factor vs duration")
    p.add_argument("--ramp", choices=sorted(dynamics.RAMP_FACTORIES), required=True)
    p.add_argument("--omega-c", type=float, required=True)
    p.add_argument("--omega-h", type=float, required=True)
    p.add_argument("--durations", type=_parse_durations, required=True,
                   help="comma-separated stroke durations")
    p.add_argument("--rtol", type=float, default=1e-10)
    add_common(p)
    p.set_defaults(func=_cmd_lambda)

    p = sub.add_parser("cycle", help="single-cycle energetics as JSON")
    p.add_argument("--beta-c", type=float, required=True)
    p.add_argument("--beta-h", type=float, required=True)
    p.add_argument("--omega-c", type=float, required=True)
    p.add_argument("--omega-h", type=float, required=True)
    p.add_argument("--drive", choices=["adiabatic", "sudden", "linear", "quadratic", "exp"],
                   default="adiabatic")
    p.add_argument("--duration", type=float, default=None,
                   help="stroke duration (ramp drives only)")
    p.add_argument("--regime", choices=["exact", "high-t", "low-t"], default="exact")
    p.add_argument("--require", choices=["engine", "refrigerator"], default=None,
                   help="exit 3 unless the cycle operates in this mode")
    add_common(p)
    p.set_defaults(func=_cmd_cycle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    if isinstance(getattr(args, "eta_c_grid", None), str):
        args.eta_c_grid = _parse_grid(args.eta_c_grid)
    if isinstance(getattr(args, "zeta_c_grid", None), str):
        args.zeta_c_grid = _parse_grid(args.zeta_c_grid)
    try:
        return args.func(args)
    except OttoError as exc:
        json.dump({"error": type(exc).__name__,
                   "precondition": exc.precondition,
                   "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
