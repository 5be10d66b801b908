"""Command-line front end: regime classification, region export, verification.

Power ratios are read in dB by default (``--unit linear`` opts out); a value
may also carry an explicit ``dB``/``lin`` suffix that overrides the unit flag.
Relay rates are always in bits per channel use.  Region tables go out as CSV
(``r1_bits,r2_bits`` rows, plus a ``beta`` column for curve samples) or as
JSON carrying both the half-plane and the vertex form; the ``figures``
command reproduces the bundled numeric examples as CSV tables with rendered
plots alongside.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import type1, type2, verify
from .core import (
    ChannelParams,
    Regime,
    RegimeLabel,
    classify_type1,
    classify_type2,
    db_to_linear,
    linear_to_db,
)
from .geometry import RateRegion

OUTPUT_DIR_ENV = "ZRELAY_OUTPUT_DIR"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_IO = 3

_REGION_FORMS = {
    (1, RegimeLabel.WEAK): "weak-union-boundary: split-sweep corner curve capped by the single-user bounds (achievable)",
    (1, RegimeLabel.STRONG): "strong-pentagon: sum-rate bound gains the full relay rate (capacity)",
    (1, RegimeLabel.VERY_STRONG): "very-strong-rectangle: both single-user rates, relay adds nothing (capacity)",
    (2, RegimeLabel.WEAK): "weak-lifted-boundary: no-relay curve lifted by the quantizer bonus (achievable)",
    (2, RegimeLabel.MODERATELY_STRONG): "moderate-hull: convex hull over the recombination/split/link-share sweep (achievable)",
    (2, RegimeLabel.STRONG): "strong-pentagon: R2 bound gains the full relay rate (capacity)",
    (2, RegimeLabel.VERY_STRONG): "very-strong-rectangle: R2 gains the full relay rate (capacity)",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def parse_ratio(text: str, unit: str) -> float:
    """Parse a power-ratio flag value: bare number per --unit, suffix overrides."""
    cleaned = text.strip()
    lowered = cleaned.lower()
    if lowered.endswith("db"):
        return db_to_linear(float(cleaned[:-2]))
    if lowered.endswith("lin"):
        return float(cleaned[:-3])
    value = float(cleaned)
    return db_to_linear(value) if unit == "db" else value


def _channel_from_args(args: argparse.Namespace) -> ChannelParams:
    return ChannelParams(
        parse_ratio(args.snr1, args.unit),
        parse_ratio(args.snr2, args.unit),
        parse_ratio(args.inr2, args.unit),
        args.r0,
    )


def _add_channel_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--type", type=int, choices=(1, 2), required=True, help="relay link direction")
    parser.add_argument("--snr1", required=True, help="direct link 1 power ratio (e.g. 25dB)")
    parser.add_argument("--snr2", required=True, help="direct link 2 power ratio")
    parser.add_argument("--inr2", required=True, help="cross link power ratio")
    parser.add_argument("--r0", type=float, required=True, help="relay link rate in bits")
    parser.add_argument(
        "--unit", choices=("db", "linear"), default="db", help="unit of bare ratio values (default db)"
    )


def _output_dir(explicit: str | None) -> str:
    return explicit or os.environ.get(OUTPUT_DIR_ENV) or os.getcwd()


def _threshold_lines(regime: Regime) -> list[str]:
    lines = []
    for name, value in regime.thresholds.items():
        db = linear_to_db(value) if value > 0 else -math.inf
        lines.append(f"  {name}: {value:.6g} ({db:.2f} dB)")
    return lines


def _classify(params: ChannelParams, channel_type: int) -> tuple[Regime, str]:
    regime = classify_type1(params) if channel_type == 1 else classify_type2(params)
    return regime, _REGION_FORMS[(channel_type, regime.label)]


def cmd_classify(args: argparse.Namespace) -> int:
    params = _channel_from_args(args)
    regime, form = _classify(params, args.type)
    if args.json:
        payload = {
            "type": args.type,
            "channel": {"snr1": params.snr1, "snr2": params.snr2, "inr2": params.inr2, "r0": params.r0},
            "regime": regime.label.value,
            "region_form": form,
            "thresholds": regime.thresholds,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"regime: {regime.label.value}")
        print(f"region form: {form}")
        print("thresholds (linear / dB):")
        for line in _threshold_lines(regime):
            print(line)
    return EXIT_OK


def _compute_region(params: ChannelParams, args: argparse.Namespace) -> tuple[RateRegion, Regime]:
    if args.type == 1:
        return type1.region_type1(params, n_boundary=args.n_boundary)
    sweep = type2.SweepConfig(
        n_alpha=args.n_alpha, alpha_span=args.alpha_span, n_beta=args.n_beta, n_ra=args.n_ra
    )
    return type2.region_type2(params, sweep=sweep, n_boundary=args.n_boundary)


def _curve_samples(params: ChannelParams, channel_type: int, n: int) -> np.ndarray:
    betas = np.linspace(0.0, 1.0, n)
    module = type1 if channel_type == 1 else type2
    curve = module.corner_curve(params, betas)
    return np.column_stack([curve, betas])


def _write_region_csv(path: str, region: RateRegion) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["r1_bits", "r2_bits"])
        for x, y in region.vertices:
            writer.writerow([f"{x:.12g}", f"{y:.12g}"])


def _write_curve_csv(path: str, samples: np.ndarray) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["r1_bits", "r2_bits", "beta"])
        for x, y, beta in samples:
            writer.writerow([f"{x:.12g}", f"{y:.12g}", f"{beta:.12g}"])


def cmd_region(args: argparse.Namespace) -> int:
    params = _channel_from_args(args)
    region, regime = _compute_region(params, args)
    form = _REGION_FORMS[(args.type, regime.label)]
    out = args.out
    if out is None:
        out = os.path.join(_output_dir(None), f"region_type{args.type}.{args.format}")
    try:
        if args.format == "csv":
            _write_region_csv(out, region)
            written = [out]
            if args.curve:
                curve_path = os.path.splitext(out)[0] + "_curve.csv"
                _write_curve_csv(curve_path, _curve_samples(params, args.type, args.n_boundary))
                written.append(curve_path)
        else:
            payload = {
                "type": args.type,
                "channel": {"snr1": params.snr1, "snr2": params.snr2, "inr2": params.inr2, "r0": params.r0},
                "regime": regime.label.value,
                "region_form": form,
                "thresholds": regime.thresholds,
                "region": region.to_dict(),
            }
            if args.curve:
                payload["curve"] = _curve_samples(params, args.type, args.n_boundary).tolist()
            with open(out, "w") as handle:
                json.dump(payload, handle, indent=2, sort_keys=True)
                handle.write("\n")
            written = [out]
        if args.plot:
            from .plotting import render_regions

            plot_path = os.path.splitext(out)[0] + ".png"
            label = f"direction {args.type}, r0={params.r0:g} ({regime.label.value})"
            render_regions([(label, region)], plot_path)
            written.append(plot_path)
    except OSError as exc:
        print(f"I/O error writing {exc.filename or out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"regime: {regime.label.value}")
    print(f"region form: {form}")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    names = args.suite if args.suite else None
    try:
        results = verify.run_suites(names, seed=args.seed, draws=args.draws)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        payload = [
            {
                "suite": r.name,
                "passed": r.passed,
                "checks": r.checks,
                "max_error": r.max_error,
                "detail": r.detail,
            }
            for r in results
        ]
        print(json.dumps(payload, indent=2))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.name}: {r.checks} checks, {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


@dataclass(frozen=True)
class FigureSpec:
    name: str
    channel_type: int
    snr1_db: float
    snr2_db: float
    inr2_db: float
    r0_values: tuple[float, ...]
    title: str


FIGURES = {
    "fig4": FigureSpec("fig4", 1, 25.0, 25.0, 30.0, (0.0, 2.0, 4.0), "Direction 1, strong interference"),
    "fig5": FigureSpec("fig5", 1, 25.0, 25.0, 20.0, (0.0, 1.0), "Direction 1, weak interference"),
    "fig6": FigureSpec("fig6", 2, 20.0, 20.0, 55.0, (0.0, 2.0, 4.0), "Direction 2, very strong / strong interference"),
    "fig7": FigureSpec("fig7", 2, 20.0, 20.0, 15.0, (0.0, 2.0), "Direction 2, weak interference"),
}


def cmd_figures(args: argparse.Namespace) -> int:
    which = list(FIGURES) if args.which == "all" else [args.which]
    out_dir = _output_dir(args.out_dir)
    try:
        os.makedirs(out_dir, exist_ok=True)
        for name in which:
            spec = FIGURES[name]
            entries = []
            for r0 in spec.r0_values:
                params = ChannelParams.from_db(spec.snr1_db, spec.snr2_db, spec.inr2_db, r0)
                if spec.channel_type == 1:
                    region, regime = type1.region_type1(params, n_boundary=args.n_boundary)
                else:
                    region, regime = type2.region_type2(params, n_boundary=args.n_boundary)
                csv_path = os.path.join(out_dir, f"{spec.name}_r0_{r0:g}.csv")
                _write_region_csv(csv_path, region)
                entries.append((f"r0 = {r0:g} bits ({regime.label.value})", region))
                print(f"wrote {csv_path}")
            if not args.no_plot:
                from .plotting import render_regions

                png = render_regions(entries, os.path.join(out_dir, f"{spec.name}.png"), spec.title)
                print(f"wrote {png}")
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zrelay", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="report the interference regime and thresholds")
    _add_channel_flags(p_classify)
    p_classify.add_argument("--json", action="store_true", help="machine-readable output")
    p_classify.set_defaults(func=cmd_classify)

    p_region = sub.add_parser("region", help="compute a rate region and export its boundary table")
    _add_channel_flags(p_region)
    p_region.add_argument("--out", help="output path (default region_type<N>.<fmt> in the output dir)")
    p_region.add_argument("--format", choices=("csv", "json"), default="csv")
    p_region.add_argument("--n-boundary", type=int, default=201, help="boundary samples for curved regions")
    p_region.add_argument("--curve", action="store_true", help="also export per-split boundary-curve samples")
    p_region.add_argument("--plot", action="store_true", help="render the region to PNG alongside the table")
    p_region.add_argument("--n-alpha", type=int, default=41, help="sweep grid (direction 2, moderate regime)")
    p_region.add_argument("--n-beta", type=int, default=41)
    p_region.add_argument("--n-ra", type=int, default=17)
    p_region.add_argument("--alpha-span", type=float, default=1.0)
    p_region.set_defaults(func=cmd_region)

    p_verify = sub.add_parser("verify", help="run the randomized cross-verification suites")
    p_verify.add_argument("--seed", type=int, default=12345)
    p_verify.add_argument("--draws", type=int, default=100)
    p_verify.add_argument("--suite", action="append", choices=sorted(verify.SUITES), help="run only the named suite (repeatable)")
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_figures = sub.add_parser("figures", help="reproduce the bundled numeric examples (CSV + PNG)")
    p_figures.add_argument("--which", choices=sorted(FIGURES) + ["all"], default="all")
    p_figures.add_argument("--out-dir", help=f"output directory (default ${OUTPUT_DIR_ENV} or the cwd)")
    p_figures.add_argument("--n-boundary", type=int, default=201)
    p_figures.add_argument("--no-plot", action="store_true", help="skip PNG rendering")
    p_figures.set_defaults(func=cmd_figures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
