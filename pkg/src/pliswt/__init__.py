"""Powerline interference removal for single-lead ECG recordings.

Core pipeline: stationary wavelet decomposition, per-scale moving-median
thresholds, QRS-gated hybrid shrinkage, reconstruction.  The package also
ships the validation toolkit: an EN50160-style interference synthesizer,
SIR-exact mixing, an adaptive harmonic notch baseline, the ASCI fidelity
metric, a rational resampler, and a reproducible benchmark harness.
"""

from .core import InputError, Signal, SirLevelDb, population_std, signal_power
from .denoise import DenoiseConfig, denoise
from .harness import (
    ExperimentManifest,
    RecordSpec,
    ResultRow,
    SummaryRow,
    default_manifest,
    emit_traces,
    load_manifest,
    run_experiment,
    summarize,
    synthetic_records,
    write_manifest,
)
from .io import load_signal_csv, save_signal_csv
from .metrics import AsciReport, asci
from .notch import NotchConfig, adaptive_notch, adaptive_notch_details
from .plisynth import (
    PliConfig,
    PliRealization,
    mix_at_sir,
    synth_ecg,
    synthesize_pli,
    synthesize_pli_realization,
)
from .resample import ResampleSpec, resample
from .shrinkage import (
    QrsDetectorConfig,
    RegionMask,
    ThresholdSeries,
    detect_qrs_regions,
    detect_r_peaks,
    hard_shrink,
    hybrid_shrink_band,
    moving_median_threshold,
    soft_shrink,
)
from .swt import WaveletDecomposition, swt_forward, swt_inverse
from .wavelets import SUPPORTED_ORDERS, WaveletFilterPair, daubechies_filters

__version__ = "0.1.0"

__all__ = [
    "AsciReport",
    "DenoiseConfig",
    "ExperimentManifest",
    "InputError",
    "NotchConfig",
    "PliConfig",
    "PliRealization",
    "QrsDetectorConfig",
    "RecordSpec",
    "RegionMask",
    "ResampleSpec",
    "ResultRow",
    "Signal",
    "SirLevelDb",
    "SummaryRow",
    "SUPPORTED_ORDERS",
    "ThresholdSeries",
    "WaveletDecomposition",
    "WaveletFilterPair",
    "adaptive_notch",
    "adaptive_notch_details",
    "asci",
    "daubechies_filters",
    "default_manifest",
    "denoise",
    "detect_qrs_regions",
    "detect_r_peaks",
    "emit_traces",
    "hard_shrink",
    "hybrid_shrink_band",
    "load_manifest",
    "load_signal_csv",
    "mix_at_sir",
    "moving_median_threshold",
    "population_std",
    "resample",
    "run_experiment",
    "save_signal_csv",
    "signal_power",
    "soft_shrink",
    "summarize",
    "swt_forward",
    "swt_inverse",
    "synth_ecg",
    "synthesize_pli",
    "synthesize_pli_realization",
    "synthetic_records",
    "write_manifest",
]
