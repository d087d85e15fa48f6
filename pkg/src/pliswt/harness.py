"""Benchmark orchestration: contaminate records, denoise with every method,
score against the clean reference, and report per-trial rows plus a summary.

Runs are fully deterministic: every trial seed is derived from the manifest
base seed, methods only ever see the contaminated signal, and outputs are
written in a fixed order, so identical manifests produce identical bytes.
The one exception is the wall-clock runtime column; set ``measure_runtime``
to false when byte-identical reruns matter more than timings.
"""

from __future__ import annotations

import configparser
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

from .core import InputError, Signal
from .denoise import DenoiseConfig, denoise
from .io import load_signal_csv
from .metrics import asci
from .notch import NotchConfig, adaptive_notch
from .plisynth import PliConfig, mix_at_sir, synth_ecg, synthesize_pli
from .resample import resample
from .shrinkage import QrsDetectorConfig

DEFAULT_SIR_LEVELS_DB = (15.0, 10.0, 5.0, 0.0, -5.0, -10.0)

Method = Callable[[Signal], Signal]


@dataclass(frozen=True)
class RecordSpec:
    """One input record: either a synthetic ECG or a CSV file on disk."""

    record_id: str
    heart_rate_bpm: float | None = None
    ecg_seed: int | None = None
    csv_path: str | None = None

    def __post_init__(self) -> None:
        synthetic = self.heart_rate_bpm is not None and self.ecg_seed is not None
        if synthetic == (self.csv_path is not None):
            raise InputError(
                "record needs either heart_rate_bpm+ecg_seed or csv_path"
            )

    @property
    def is_synthetic(self) -> bool:
        return self.csv_path is None


@dataclass(frozen=True)
class ResultRow:
    record_id: str
    method: str
    sir_db: float
    seed: int
    asci_value: float
    runtime_ms: float

    def __post_init__(self) -> None:
        if not -1.0 <= self.asci_value <= 1.0:
            raise InputError("asci must lie in [-1, 1]")
        if self.runtime_ms < 0.0:
            raise InputError("runtime must be >= 0")


@dataclass(frozen=True)
class SummaryRow:
    method: str
    sir_db: float
    mean_asci: float
    std_asci: float
    n: int


@dataclass(frozen=True)
class ExperimentManifest:
    records: tuple[RecordSpec, ...]
    output_dir: str
    sir_levels_db: tuple[float, ...] = DEFAULT_SIR_LEVELS_DB
    trials: int = 3
    duration_s: float = 60.0
    sample_rate_hz: float = 1000.0
    base_seed: int = 20260810
    excluded_prefix_s: float = 1.0
    measure_runtime: bool = True
    pli: PliConfig = field(default_factory=PliConfig)
    denoise: DenoiseConfig = field(default_factory=DenoiseConfig)
    notch: NotchConfig = field(default_factory=NotchConfig)

    def __post_init__(self) -> None:
        if not self.records:
            raise InputError("manifest needs at least one record")
        if not self.sir_levels_db:
            raise InputError("manifest needs at least one SIR level")
        if self.trials < 1:
            raise InputError("manifest needs at least one trial")
        if self.excluded_prefix_s < 0.0:
            raise InputError("excluded_prefix_s must be >= 0")
        ids = [r.record_id for r in self.records]
        if len(set(ids)) != len(ids):
            raise InputError("record ids must be unique")

    def trial_seed(self, record_index: int, sir_index: int, trial: int) -> int:
        return (
            self.base_seed
            + 1_000_003 * record_index
            + 10_007 * sir_index
            + trial
        )


def synthetic_records(count: int, base_seed: int) -> tuple[RecordSpec, ...]:
    """Deterministic family of synthetic records with spread heart rates."""
    if count < 1:
        raise InputError("need at least one synthetic record")
    return tuple(
        RecordSpec(
            record_id=f"synth{i:02d}",
            heart_rate_bpm=55.0 + 4.0 * (i % 10),
            ecg_seed=base_seed + 500_009 * i + 1,
        )
        for i in range(count)
    )


def default_manifest(
    output_dir: str,
    record_count: int = 10,
    trials: int = 3,
    duration_s: float = 60.0,
    base_seed: int = 20260810,
    measure_runtime: bool = True,
) -> ExperimentManifest:
    return ExperimentManifest(
        records=synthetic_records(record_count, base_seed),
        output_dir=output_dir,
        trials=trials,
        duration_s=duration_s,
        base_seed=base_seed,
        measure_runtime=measure_runtime,
    )


def _default_methods(manifest: ExperimentManifest) -> dict[str, Method]:
    return {
        "swt": lambda noisy: denoise(noisy, manifest.denoise),
        "notch": lambda noisy: adaptive_notch(noisy, manifest.notch),
    }


def _load_record(manifest: ExperimentManifest, spec: RecordSpec) -> Signal:
    if spec.is_synthetic:
        signal, _ = synth_ecg(
            manifest.duration_s,
            manifest.sample_rate_hz,
            spec.heart_rate_bpm,
            seed=spec.ecg_seed,
        )
        return signal
    signal = load_signal_csv(spec.csv_path)
    if signal.sample_rate_hz != manifest.sample_rate_hz:
        signal = resample(signal, manifest.sample_rate_hz)
    return signal


def run_experiment(
    manifest: ExperimentManifest, methods: Mapping[str, Method] | None = None
) -> tuple[list[ResultRow], list[SummaryRow], list[str]]:
    """Execute every (record, SIR, trial, method) cell of the manifest.

    Returns rows, summary and a list of per-cell error descriptions.
    Failures are recorded and skipped; they never abort the run.  Output
    files (rows.csv, summary.csv, resolved_manifest.ini, errors.csv when
    non-empty) land in the manifest output directory.
    """
    if methods is None:
        methods = _default_methods(manifest)
    method_names = sorted(methods)
    out_dir = Path(manifest.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    rows: list[ResultRow] = []
    minute_rows: list[tuple[str, str, float, int, int, float]] = []
    errors: list[str] = []
    prefix = int(round(manifest.excluded_prefix_s * manifest.sample_rate_hz))
    for record_index, spec in enumerate(manifest.records):
        try:
            clean = _load_record(manifest, spec)
        except InputError as exc:
            errors.append(f"{spec.record_id}: {exc}")
            continue
        duration = len(clean) / clean.sample_rate_hz
        for sir_index, sir_db in enumerate(manifest.sir_levels_db):
            for trial in range(manifest.trials):
                seed = manifest.trial_seed(record_index, sir_index, trial)
                try:
                    pli = synthesize_pli(
                        duration,
                        manifest.sample_rate_hz,
                        replace(manifest.pli, seed=seed),
                    )
                    noisy, _ = mix_at_sir(clean, pli, sir_db)
                except InputError as exc:
                    errors.append(
                        f"{spec.record_id}/sir{sir_db:+g}/trial{trial}: {exc}"
                    )
                    continue
                for name in method_names:
                    try:
                        started = time.perf_counter()
                        restored = methods[name](noisy)
                        elapsed_ms = (time.perf_counter() - started) * 1000.0
                        report = asci(
                            clean, restored, excluded_prefix_samples=prefix
                        )
                    except InputError as exc:
                        errors.append(
                            f"{spec.record_id}/{name}/sir{sir_db:+g}"
                            f"/trial{trial}: {exc}"
                        )
                        continue
                    rows.append(
                        ResultRow(
                            record_id=spec.record_id,
                            method=name,
                            sir_db=sir_db,
                            seed=seed,
                            asci_value=report.value,
                            runtime_ms=elapsed_ms if manifest.measure_runtime else 0.0,
                        )
                    )
                    for minute, value in _per_minute_values(
                        report.agreement, prefix, manifest.sample_rate_hz
                    ):
                        minute_rows.append(
                            (spec.record_id, name, sir_db, seed, minute, value)
                        )
    rows.sort(key=lambda r: (r.record_id, r.method, -r.sir_db, r.seed))
    minute_rows.sort(key=lambda r: (r[0], r[1], -r[2], r[3], r[4]))
    summary = summarize(rows)
    _write_rows_csv(out_dir / "rows.csv", rows)
    _write_summary_csv(out_dir / "summary.csv", summary)
    _write_minutes_csv(out_dir / "minutes.csv", minute_rows)
    write_manifest(manifest, out_dir / "resolved_manifest.ini")
    if errors:
        (out_dir / "errors.csv").write_text(
            "error\n" + "\n".join(errors) + "\n"
        )
    return rows, summary, errors


def summarize(rows: list[ResultRow]) -> list[SummaryRow]:
    """Mean and population standard deviation of ASCI per (method, SIR)."""
    groups: dict[tuple[str, float], list[float]] = {}
    for row in rows:
        groups.setdefault((row.method, row.sir_db), []).append(row.asci_value)
    summary = []
    for (method, sir_db), values in sorted(
        groups.items(), key=lambda item: (item[0][0], -item[0][1])
    ):
        arr = np.asarray(values)
        summary.append(
            SummaryRow(
                method=method,
                sir_db=sir_db,
                mean_asci=float(arr.mean()),
                std_asci=float(arr.std()),
                n=len(values),
            )
        )
    return summary


def emit_traces(
    manifest: ExperimentManifest,
    record_id: str,
    sir_db: float,
    methods: Mapping[str, Method] | None = None,
) -> Path:
    """Write aligned clean/noisy/per-method sample columns for plotting."""
    if methods is None:
        methods = _default_methods(manifest)
    specs = {r.record_id: (i, r) for i, r in enumerate(manifest.records)}
    if record_id not in specs:
        raise InputError(f"unknown record id {record_id!r}")
    if sir_db not in manifest.sir_levels_db:
        raise InputError(f"SIR {sir_db:+g} dB is not in the manifest")
    record_index, spec = specs[record_id]
    sir_index = manifest.sir_levels_db.index(sir_db)
    clean = _load_record(manifest, spec)
    seed = manifest.trial_seed(record_index, sir_index, trial=0)
    pli = synthesize_pli(
        len(clean) / clean.sample_rate_hz,
        manifest.sample_rate_hz,
        replace(manifest.pli, seed=seed),
    )
    noisy, _ = mix_at_sir(clean, pli, sir_db)
    names = sorted(methods)
    columns = [clean.samples, noisy.samples]
    for name in names:
        columns.append(methods[name](noisy).samples)
    out_dir = Path(manifest.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"trace_{record_id}_sir_{sir_db:g}dB.csv"
    header = ",".join(["clean", "noisy", *names])
    lines = [header]
    for row in zip(*columns):
        lines.append(",".join(f"{v:.17g}" for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def _per_minute_values(
    agreement: np.ndarray, prefix: int, sample_rate_hz: float
) -> list[tuple[int, float]]:
    """Diagnostic scores over successive one-minute stretches, the prefix
    excluded from the first one."""
    per_minute = max(1, int(round(60.0 * sample_rate_hz)))
    values = []
    for minute, start in enumerate(range(0, agreement.size, per_minute)):
        scored = agreement[max(start, prefix) : start + per_minute]
        if scored.size:
            values.append((minute, (2 * int(scored.sum()) - scored.size) / scored.size))
    return values


def _write_minutes_csv(path: Path, minute_rows) -> None:
    lines = ["record,method,sir_db,seed,minute,asci"]
    for record_id, method, sir_db, seed, minute, value in minute_rows:
        lines.append(f"{record_id},{method},{sir_db:g},{seed},{minute},{value:.17g}")
    path.write_text("\n".join(lines) + "\n")


def _write_rows_csv(path: Path, rows: list[ResultRow]) -> None:
    lines = ["record,method,sir_db,seed,asci,runtime_ms"]
    for r in rows:
        lines.append(
            f"{r.record_id},{r.method},{r.sir_db:g},{r.seed},"
            f"{r.asci_value:.17g},{r.runtime_ms:.3f}"
        )
    path.write_text("\n".join(lines) + "\n")


def _write_summary_csv(path: Path, summary: list[SummaryRow]) -> None:
    lines = ["method,sir_db,mean_asci,std_asci,n"]
    for r in summary:
        lines.append(
            f"{r.method},{r.sir_db:g},{r.mean_asci:.17g},{r.std_asci:.17g},{r.n}"
        )
    path.write_text("\n".join(lines) + "\n")


def load_rows_csv(path: str | Path) -> list[ResultRow]:
    lines = Path(path).read_text().strip().splitlines()
    rows = []
    for line in lines[1:]:
        record_id, method, sir, seed, value, runtime = line.split(",")
        rows.append(
            ResultRow(record_id, method, float(sir), int(seed), float(value), float(runtime))
        )
    return rows


# --- manifest file format (INI sections, human-editable) -------------------


def write_manifest(manifest: ExperimentManifest, path: str | Path) -> None:
    """Write a fully resolved manifest: defaults expanded, seeds materialized."""
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep record ids case-sensitive
    parser["experiment"] = {
        "duration_s": f"{manifest.duration_s:.17g}",
        "sample_rate_hz": f"{manifest.sample_rate_hz:.17g}",
        "sir_levels_db": ", ".join(f"{s:g}" for s in manifest.sir_levels_db),
        "trials": str(manifest.trials),
        "base_seed": str(manifest.base_seed),
        "excluded_prefix_s": f"{manifest.excluded_prefix_s:.17g}",
        "measure_runtime": "true" if manifest.measure_runtime else "false",
        "output_dir": manifest.output_dir,
    }
    records: dict[str, str] = {}
    for r in manifest.records:
        if r.is_synthetic:
            records[r.record_id] = f"synthetic hr={r.heart_rate_bpm:g} seed={r.ecg_seed}"
        else:
            records[r.record_id] = f"csv {r.csv_path}"
    parser["records"] = records
    parser["pli"] = {
        "fundamental_hz": f"{manifest.pli.fundamental_hz:.17g}",
        "freq_tolerance_fraction": f"{manifest.pli.freq_tolerance_fraction:.17g}",
        "harmonic_power_caps": ", ".join(
            f"{c:.17g}" for c in manifest.pli.harmonic_power_caps
        ),
        "amplitude_mod_depth": f"{manifest.pli.amplitude_mod_depth:.17g}",
        "drift_bandwidth_hz": f"{manifest.pli.drift_bandwidth_hz:.17g}",
    }
    parser["denoise"] = {
        "levels": str(manifest.denoise.levels),
        "wavelet_order": str(manifest.denoise.wavelet_order),
        "median_window_ms": f"{manifest.denoise.median_window_ms:.17g}",
        "qrs_window_ms": f"{manifest.denoise.qrs_window_ms:.17g}",
        "threshold_scale": f"{manifest.denoise.threshold_scale:.17g}",
    }
    det = manifest.denoise.detector
    parser["detector"] = {
        "bandpass_low_hz": f"{det.bandpass_low_hz:.17g}",
        "bandpass_high_hz": f"{det.bandpass_high_hz:.17g}",
        "integration_window_ms": f"{det.integration_window_ms:.17g}",
        "refractory_ms": f"{det.refractory_ms:.17g}",
        "threshold_fraction": f"{det.threshold_fraction:.17g}",
    }
    parser["notch"] = {
        "fundamental_hz": f"{manifest.notch.fundamental_hz:.17g}",
        "num_harmonics": str(manifest.notch.num_harmonics),
        "adaptation_rate": f"{manifest.notch.adaptation_rate:.17g}",
        "notch_pole_radius": f"{manifest.notch.notch_pole_radius:.17g}",
        "freq_clamp_fraction": f"{manifest.notch.freq_clamp_fraction:.17g}",
    }
    seeds: dict[str, str] = {}
    for record_index, spec in enumerate(manifest.records):
        for sir_index, sir_db in enumerate(manifest.sir_levels_db):
            for trial in range(manifest.trials):
                key = f"{spec.record_id} sir{sir_db:+g} trial{trial}"
                seeds[key] = str(manifest.trial_seed(record_index, sir_index, trial))
    parser["seeds"] = seeds
    with Path(path).open("w") as fh:
        parser.write(fh)


def _coerce(kind, raw: str, context: str):
    try:
        return kind(raw)
    except ValueError as exc:
        raise InputError(f"{context}: {raw!r} is not a valid {kind.__name__}") from exc


def _parse_record_line(record_id: str, value: str) -> RecordSpec:
    parts = value.split()
    if not parts:
        raise InputError(f"record {record_id!r}: empty definition")
    if parts[0] == "synthetic":
        fields = dict(p.split("=", 1) for p in parts[1:] if "=" in p)
        if "hr" not in fields or "seed" not in fields:
            raise InputError(
                f"record {record_id!r}: synthetic records need hr= and seed="
            )
        return RecordSpec(
            record_id=record_id,
            heart_rate_bpm=_coerce(float, fields["hr"], f"record {record_id!r} hr"),
            ecg_seed=_coerce(int, fields["seed"], f"record {record_id!r} seed"),
        )
    if parts[0] == "csv":
        if len(parts) != 2:
            raise InputError(f"record {record_id!r}: expected 'csv <path>'")
        return RecordSpec(record_id=record_id, csv_path=parts[1])
    raise InputError(f"record {record_id!r}: unknown kind {parts[0]!r}")


def load_manifest(path: str | Path) -> ExperimentManifest:
    """Parse a manifest file; absent keys fall back to the defaults."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"no such manifest: {path}")
    parser = configparser.ConfigParser()
    parser.optionxform = str
    parser.read(path)
    exp = parser["experiment"] if parser.has_section("experiment") else {}

    def get_float(section, key, default, name="experiment"):
        return _coerce(float, str(section.get(key, default)), f"[{name}] {key}")

    def get_int(section, key, default, name="experiment"):
        return _coerce(int, str(section.get(key, default)), f"[{name}] {key}")

    base_seed = get_int(exp, "base_seed", 20260810)
    records: list[RecordSpec] = []
    if parser.has_section("records"):
        for record_id, value in parser["records"].items():
            records.append(_parse_record_line(record_id, value))
    if not records:
        count = get_int(exp, "synthetic_records", 10)
        records = list(synthetic_records(count, base_seed))

    sir_raw = exp.get("sir_levels_db", ", ".join(f"{s:g}" for s in DEFAULT_SIR_LEVELS_DB))
    sir_levels = tuple(
        _coerce(float, v, "[experiment] sir_levels_db")
        for v in sir_raw.replace(",", " ").split()
    )

    pli_s = parser["pli"] if parser.has_section("pli") else {}
    caps_default = ", ".join(f"{c:g}" for c in PliConfig().harmonic_power_caps)
    caps_raw = pli_s.get("harmonic_power_caps", caps_default)
    caps = tuple(
        _coerce(float, v, "[pli] harmonic_power_caps")
        for v in caps_raw.replace(",", " ").split()
    )
    pli = PliConfig(
        fundamental_hz=get_float(pli_s, "fundamental_hz", 50.0, "pli"),
        freq_tolerance_fraction=get_float(pli_s, "freq_tolerance_fraction", 0.01, "pli"),
        harmonic_power_caps=caps,
        amplitude_mod_depth=get_float(pli_s, "amplitude_mod_depth", 0.05, "pli"),
        drift_bandwidth_hz=get_float(pli_s, "drift_bandwidth_hz", 0.1, "pli"),
    )

    det_s = parser["detector"] if parser.has_section("detector") else {}
    detector = QrsDetectorConfig(
        bandpass_low_hz=get_float(det_s, "bandpass_low_hz", 5.0, "detector"),
        bandpass_high_hz=get_float(det_s, "bandpass_high_hz", 15.0, "detector"),
        integration_window_ms=get_float(det_s, "integration_window_ms", 150.0, "detector"),
        refractory_ms=get_float(det_s, "refractory_ms", 250.0, "detector"),
        threshold_fraction=get_float(det_s, "threshold_fraction", 0.25, "detector"),
    )
    den_s = parser["denoise"] if parser.has_section("denoise") else {}
    den = DenoiseConfig(
        levels=get_int(den_s, "levels", 4, "denoise"),
        wavelet_order=get_int(den_s, "wavelet_order", 6, "denoise"),
        median_window_ms=get_float(den_s, "median_window_ms", 200.0, "denoise"),
        qrs_window_ms=get_float(den_s, "qrs_window_ms", 120.0, "denoise"),
        threshold_scale=get_float(den_s, "threshold_scale", 4.0, "denoise"),
        detector=detector,
    )
    ntc_s = parser["notch"] if parser.has_section("notch") else {}
    notch = NotchConfig(
        fundamental_hz=get_float(ntc_s, "fundamental_hz", 50.0, "notch"),
        num_harmonics=get_int(ntc_s, "num_harmonics", 5, "notch"),
        adaptation_rate=get_float(ntc_s, "adaptation_rate", 1e-4, "notch"),
        notch_pole_radius=get_float(ntc_s, "notch_pole_radius", 0.985, "notch"),
        freq_clamp_fraction=get_float(ntc_s, "freq_clamp_fraction", 0.05, "notch"),
    )
    measure_raw = exp.get("measure_runtime", "true").strip().lower()
    return ExperimentManifest(
        records=tuple(records),
        output_dir=exp.get("output_dir", "pliswt-out"),
        sir_levels_db=sir_levels,
        trials=get_int(exp, "trials", 3),
        duration_s=get_float(exp, "duration_s", 60.0),
        sample_rate_hz=get_float(exp, "sample_rate_hz", 1000.0),
        base_seed=base_seed,
        excluded_prefix_s=get_float(exp, "excluded_prefix_s", 1.0),
        measure_runtime=measure_raw in ("1", "true", "yes", "on"),
        pli=pli,
        denoise=den,
        notch=notch,
    )
