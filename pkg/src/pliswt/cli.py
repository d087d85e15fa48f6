"""Command line interface.

Subcommands: denoise, synth-pli, synth-ecg, mix, asci, bench, traces.
Signals travel as single-column CSV files (see :mod:`pliswt.io`).
"""

from __future__ import annotations

import argparse
import sys

from .core import InputError
from .denoise import DenoiseConfig, denoise
from .harness import emit_traces, load_manifest, run_experiment
from .io import load_signal_csv, save_signal_csv
from .metrics import asci
from .plisynth import PliConfig, mix_at_sir, synth_ecg, synthesize_pli


def _add_denoise(sub) -> None:
    p = sub.add_parser("denoise", help="remove powerline interference from a CSV signal")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--sample-rate", type=float, default=None,
                   help="override/declare the input sample rate in Hz")
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--wavelet-order", type=int, default=6)
    p.add_argument("--median-window-ms", type=float, default=200.0)
    p.add_argument("--qrs-window-ms", type=float, default=120.0)
    p.add_argument("--threshold-scale", type=float, default=4.0)


def _add_synth_pli(sub) -> None:
    p = sub.add_parser("synth-pli", help="synthesize a mains interference realization")
    p.add_argument("output")
    p.add_argument("--duration", type=float, required=True, help="seconds")
    p.add_argument("--sample-rate", type=float, default=1000.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fundamental-hz", type=float, default=50.0)
    p.add_argument("--freq-tolerance", type=float, default=0.01)
    p.add_argument("--amplitude-mod-depth", type=float, default=0.05)
    p.add_argument("--drift-bandwidth-hz", type=float, default=0.1)
    p.add_argument("--harmonic-caps", default="0.02,0.05,0.01,0.06",
                   help="four power caps for harmonics 2..5, comma separated")


def _add_synth_ecg(sub) -> None:
    p = sub.add_parser("synth-ecg", help="generate a synthetic ECG test record")
    p.add_argument("output")
    p.add_argument("--duration", type=float, required=True, help="seconds")
    p.add_argument("--sample-rate", type=float, default=1000.0)
    p.add_argument("--heart-rate", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rr-jitter", type=float, default=0.03)
    p.add_argument("--beat-times", default=None,
                   help="optional path for the ground-truth R times (s)")


def _add_mix(sub) -> None:
    p = sub.add_parser("mix", help="add interference to a clean signal at a target SIR")
    p.add_argument("clean")
    p.add_argument("interference")
    p.add_argument("output")
    p.add_argument("--sir-db", type=float, required=True)


def _add_asci(sub) -> None:
    p = sub.add_parser("asci", help="score a signal against a reference")
    p.add_argument("reference")
    p.add_argument("test")
    p.add_argument("--xi", type=float, default=None,
                   help="override the agreement tolerance (mV)")
    p.add_argument("--excluded-prefix-s", type=float, default=0.0)


def _add_bench(sub) -> None:
    p = sub.add_parser("bench", help="run a benchmark manifest")
    p.add_argument("manifest")
    p.add_argument("--output-dir", default=None, help="override the manifest output dir")


def _add_traces(sub) -> None:
    p = sub.add_parser("traces", help="emit plottable clean/noisy/denoised columns")
    p.add_argument("manifest")
    p.add_argument("--record", required=True)
    p.add_argument("--sir-db", type=float, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pliswt",
        description="Powerline interference removal for ECG signals "
        "(stationary wavelet transform with adaptive median thresholds).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_denoise(sub)
    _add_synth_pli(sub)
    _add_synth_ecg(sub)
    _add_mix(sub)
    _add_asci(sub)
    _add_bench(sub)
    _add_traces(sub)
    return parser


def _run(args: argparse.Namespace) -> int:
    if args.command == "denoise":
        signal = load_signal_csv(args.input, args.sample_rate)
        config = DenoiseConfig(
            levels=args.levels,
            wavelet_order=args.wavelet_order,
            median_window_ms=args.median_window_ms,
            qrs_window_ms=args.qrs_window_ms,
            threshold_scale=args.threshold_scale,
        )
        save_signal_csv(denoise(signal, config), args.output)
        return 0
    if args.command == "synth-pli":
        try:
            caps = tuple(float(v) for v in args.harmonic_caps.split(","))
        except ValueError as exc:
            raise InputError(f"bad --harmonic-caps {args.harmonic_caps!r}") from exc
        config = PliConfig(
            fundamental_hz=args.fundamental_hz,
            freq_tolerance_fraction=args.freq_tolerance,
            harmonic_power_caps=caps,
            amplitude_mod_depth=args.amplitude_mod_depth,
            drift_bandwidth_hz=args.drift_bandwidth_hz,
            seed=args.seed,
        )
        save_signal_csv(synthesize_pli(args.duration, args.sample_rate, config), args.output)
        return 0
    if args.command == "synth-ecg":
        signal, beats = synth_ecg(
            args.duration, args.sample_rate, args.heart_rate,
            seed=args.seed, rr_jitter_fraction=args.rr_jitter,
        )
        save_signal_csv(signal, args.output)
        if args.beat_times:
            with open(args.beat_times, "w") as fh:
                fh.write("\n".join(f"{b:.17g}" for b in beats) + "\n")
        return 0
    if args.command == "mix":
        clean = load_signal_csv(args.clean)
        interference = load_signal_csv(args.interference)
        noisy, scale = mix_at_sir(clean, interference, args.sir_db)
        save_signal_csv(noisy, args.output)
        print(f"scale = {scale:.17g}")
        return 0
    if args.command == "asci":
        reference = load_signal_csv(args.reference)
        test = load_signal_csv(args.test)
        prefix = int(round(args.excluded_prefix_s * reference.sample_rate_hz))
        report = asci(reference, test, xi_override=args.xi,
                      excluded_prefix_samples=prefix)
        print(f"asci = {report.value:.17g}")
        print(f"xi = {report.xi:.17g}")
        return 0
    if args.command == "bench":
        manifest = load_manifest(args.manifest)
        if args.output_dir is not None:
            from dataclasses import replace
            manifest = replace(manifest, output_dir=args.output_dir)
        rows, summary, errors = run_experiment(manifest)
        print(f"{len(rows)} rows -> {manifest.output_dir}/rows.csv")
        for s in summary:
            print(f"{s.method:>6} {s.sir_db:+6.1f} dB: "
                  f"{s.mean_asci:+.4f} +- {s.std_asci:.4f} (n={s.n})")
        for err in errors:
            print(f"error: {err}", file=sys.stderr)
        return 1 if errors else 0
    if args.command == "traces":
        manifest = load_manifest(args.manifest)
        path = emit_traces(manifest, args.record, args.sir_db)
        print(path)
        return 0
    raise AssertionError(f"unhandled command {args.command}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
