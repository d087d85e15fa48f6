"""Mains interference synthesis, SIR-controlled mixing, and a synthetic ECG.

The interference model follows the EN50160 limits: a 50 Hz fundamental
whose frequency wanders within +-1%, plus the first four harmonics with
mean powers bounded by 2, 5, 1 and 6% of the fundamental power.  All
randomness is drawn from a single seeded generator, so every realization
is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import butter, sosfiltfilt

from .core import InputError, Signal, SirLevelDb, signal_power

_NUM_TONES = 5  # fundamental plus four harmonics


@dataclass(frozen=True)
class PliConfig:
    """EN50160-style interference parameters."""

    fundamental_hz: float = 50.0
    freq_tolerance_fraction: float = 0.01
    harmonic_power_caps: tuple[float, float, float, float] = (0.02, 0.05, 0.01, 0.06)
    amplitude_mod_depth: float = 0.05
    drift_bandwidth_hz: float = 0.1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.fundamental_hz <= 0.0:
            raise InputError("fundamental_hz must be positive")
        if self.freq_tolerance_fraction < 0.0:
            raise InputError("freq_tolerance_fraction must be >= 0")
        if len(self.harmonic_power_caps) != _NUM_TONES - 1 or any(
            not 0.0 <= cap <= 1.0 for cap in self.harmonic_power_caps
        ):
            raise InputError("need four harmonic power caps, each in [0, 1]")
        if not 0.0 <= self.amplitude_mod_depth < 1.0:
            raise InputError("amplitude_mod_depth must lie in [0, 1)")
        if not self.drift_bandwidth_hz > 0.0:
            raise InputError("drift_bandwidth_hz must be positive")


@dataclass(frozen=True, eq=False)
class PliRealization:
    """One synthesized interference plus its construction ground truth."""

    signal: Signal
    fundamental_freq_hz: np.ndarray  # per-sample instantaneous frequency of tone 1
    harmonic_power_fractions: tuple[float, ...]  # realized power / fundamental power


def _slow_process(rng: np.random.Generator, n: int, bandwidth_hz: float, fs: float) -> np.ndarray:
    """Zero-mean lowpassed noise, normalized to unit peak magnitude."""
    noise = rng.standard_normal(n)
    if n < 32:
        return np.zeros(n)
    sos = butter(2, min(bandwidth_hz / (fs / 2), 0.99), output="sos")
    smooth = sosfiltfilt(sos, noise)
    peak = np.max(np.abs(smooth))
    return smooth / peak if peak > 0 else smooth


def synthesize_pli_realization(
    duration_s: float, sample_rate_hz: float, config: PliConfig = PliConfig()
) -> PliRealization:
    """Synthesize interference and report its internal ground truth."""
    if not duration_s > 0.0:
        raise InputError("duration_s must be positive")
    f0 = config.fundamental_hz
    if sample_rate_hz <= 2.0 * _NUM_TONES * f0:
        raise InputError(
            f"sample rate {sample_rate_hz} violates Nyquist for the "
            f"{_NUM_TONES * f0:.0f} Hz harmonic"
        )
    fs = float(sample_rate_hz)
    n = int(round(duration_s * fs))
    if n < 1:
        raise InputError("duration shorter than one sample")
    rng = np.random.default_rng(config.seed)

    # fundamental frequency: lowpassed noise confined to f0 * (1 +- tolerance)
    drift = _slow_process(rng, n, config.drift_bandwidth_hz, fs)
    std = np.std(drift)
    bound = config.freq_tolerance_fraction * f0
    if std > 0.0 and bound > 0.0:
        deviation = np.clip(drift / std * (bound / 3.0), -bound, bound)
    else:
        deviation = np.zeros(n)
    freq = f0 + deviation
    phase = 2.0 * np.pi * np.cumsum(freq) / fs

    depth = config.amplitude_mod_depth
    envelope = 1.0 + depth * _slow_process(rng, n, config.drift_bandwidth_hz, fs)
    fundamental = envelope * np.cos(phase)
    fundamental_power = float(np.mean(fundamental**2))

    total = fundamental.copy()
    fractions = []
    for m, cap in enumerate(config.harmonic_power_caps, start=2):
        offset = rng.uniform(0.0, 2.0 * np.pi)
        env_m = 1.0 + depth * _slow_process(rng, n, config.drift_bandwidth_hz, fs)
        draw = rng.uniform(0.0, 1.0)
        raw = env_m * np.cos(m * phase + offset)
        fraction = draw * cap
        if fraction > 0.0:
            raw_power = np.mean(raw**2)
            total += raw * np.sqrt(fraction * fundamental_power / raw_power)
        fractions.append(fraction)
    signal = Signal(samples=total, sample_rate_hz=fs)
    freq.setflags(write=False)
    return PliRealization(
        signal=signal,
        fundamental_freq_hz=freq,
        harmonic_power_fractions=tuple(fractions),
    )


def synthesize_pli(
    duration_s: float, sample_rate_hz: float, config: PliConfig = PliConfig()
) -> Signal:
    """Synthesize one interference realization."""
    return synthesize_pli_realization(duration_s, sample_rate_hz, config).signal


def mix_at_sir(
    clean: Signal, interference: Signal, sir: SirLevelDb | float
) -> tuple[Signal, float]:
    """Add scaled interference so the mix hits the target SIR exactly.

    Returns the noisy signal and the scale applied to the interference.
    """
    sir_db = sir.value if isinstance(sir, SirLevelDb) else SirLevelDb(sir).value
    if len(clean) != len(interference):
        raise InputError("clean and interference must have equal lengths")
    if clean.sample_rate_hz != interference.sample_rate_hz:
        raise InputError("clean and interference must share a sample rate")
    p_clean = signal_power(clean)
    p_intf = signal_power(interference)
    if p_clean == 0.0:
        raise InputError("clean signal has zero power")
    if p_intf == 0.0:
        raise InputError("interference has zero power")
    scale = float(np.sqrt(p_clean / (p_intf * 10.0 ** (sir_db / 10.0))))
    noisy = Signal(
        samples=clean.samples + scale * interference.samples,
        sample_rate_hz=clean.sample_rate_hz,
    )
    return noisy, scale


# (time offset s, amplitude mV, Gaussian width s) per wave, relative to the
# R peak; widths chosen so everything but the QRS stays below ~40 Hz and the
# QRS itself resembles a recording resampled from a 128 Hz source
_ECG_WAVES = (
    (-0.200, 0.12, 0.030),  # P
    (-0.036, -0.10, 0.016),  # Q
    (0.000, 1.00, 0.015),  # R
    (0.040, -0.22, 0.018),  # S
    (0.280, 0.32, 0.060),  # T
)


def synth_ecg(
    duration_s: float,
    sample_rate_hz: float,
    heart_rate_bpm: float,
    seed: int = 0,
    rr_jitter_fraction: float = 0.03,
) -> tuple[Signal, np.ndarray]:
    """Synthetic single-lead ECG made of Gaussian bumps per beat.

    Returns the signal and the ground-truth R-peak times in seconds.  The
    first beat lands at half an RR interval; with zero jitter the R times
    are exactly rr/2 + k*rr.
    """
    if not duration_s > 0.0:
        raise InputError("duration_s must be positive")
    if not 20.0 <= heart_rate_bpm <= 240.0:
        raise InputError(f"heart rate {heart_rate_bpm} bpm outside [20, 240]")
    if rr_jitter_fraction < 0.0:
        raise InputError("rr_jitter_fraction must be >= 0")
    fs = float(sample_rate_hz)
    n = int(round(duration_s * fs))
    rng = np.random.default_rng(seed)
    rr = 60.0 / heart_rate_bpm

    beat_times = []
    t_beat = rr / 2.0
    while t_beat < duration_s:
        beat_times.append(t_beat)
        t_beat += rr * max(0.3, 1.0 + rr_jitter_fraction * rng.standard_normal())
    beats = np.asarray(beat_times)

    samples = np.zeros(n)
    t = np.arange(n) / fs
    for beat in beats:
        for offset, amplitude, width in _ECG_WAVES:
            center = beat + offset
            lo = max(0, int(np.floor((center - 6.0 * width) * fs)))
            hi = min(n, int(np.ceil((center + 6.0 * width) * fs)) + 1)
            if lo >= hi:
                continue
            samples[lo:hi] += amplitude * np.exp(
                -0.5 * ((t[lo:hi] - center) / width) ** 2
            )
    beats.setflags(write=False)
    return Signal(samples=samples, sample_rate_hz=fs), beats
