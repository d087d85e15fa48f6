"""Adaptive coefficient thresholds and QRS-gated hybrid shrinkage.

The per-scale threshold is a moving median of coefficient magnitudes.
Shrinkage is hard inside detected QRS windows (large heartbeat
coefficients pass through intact) and soft elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.ndimage import median_filter
from scipy.signal import butter, find_peaks, sosfiltfilt

from .core import InputError, Signal


@dataclass(frozen=True, eq=False)
class ThresholdSeries:
    """Per-sample non-negative thresholds for one decomposition scale."""

    values: np.ndarray
    scale: int
    window_ms: float

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 1 or values.size == 0:
            raise InputError("threshold values must be a non-empty 1-D sequence")
        if np.any(values < 0.0):
            raise InputError("thresholds must be non-negative")
        if self.scale < 1:
            raise InputError("scale index starts at 1")
        if not self.window_ms > 0.0:
            raise InputError("window_ms must be positive")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def scaled(self, factor: float) -> "ThresholdSeries":
        if not factor >= 0.0:
            raise InputError("threshold scale factor must be non-negative")
        return replace(self, values=self.values * factor)


@dataclass(frozen=True, eq=False)
class RegionMask:
    """Boolean per-sample mask; True marks samples inside a QRS window."""

    flags: np.ndarray

    def __post_init__(self) -> None:
        flags = np.asarray(self.flags)
        if flags.ndim != 1 or flags.dtype != np.bool_:
            raise InputError("mask flags must be a 1-D boolean sequence")
        flags = flags.copy()
        flags.setflags(write=False)
        object.__setattr__(self, "flags", flags)

    def __len__(self) -> int:
        return int(self.flags.size)


def moving_median_threshold(
    band: np.ndarray, window_ms: float, sample_rate_hz: float, scale: int = 1
) -> ThresholdSeries:
    """Centered moving median of |band| with an odd window.

    The window length is round(window_ms * fs / 1000), forced odd by adding
    one sample, so the median is always a data value on the interior.  At
    the edges the window shrinks to the available samples.
    """
    band = np.asarray(band, dtype=np.float64)
    if band.ndim != 1 or band.size == 0:
        raise InputError("moving_median_threshold: empty band")
    if not window_ms > 0.0:
        raise InputError("window_ms must be positive")
    width = int(round(window_ms * sample_rate_hz / 1000.0))
    if width < 1:
        raise InputError("median window shorter than one sample")
    if width % 2 == 0:
        width += 1
    magnitude = np.abs(band)
    values = median_filter(magnitude, size=width, mode="nearest")
    half = width // 2
    n = band.size
    # shrinking windows at the edges: median over whatever samples exist
    for i in range(min(half, n)):
        values[i] = np.median(magnitude[: i + half + 1])
    for i in range(max(n - half, 0), n):
        values[i] = np.median(magnitude[max(0, i - half) :])
    return ThresholdSeries(values=values, scale=scale, window_ms=window_ms)


def _check_threshold(threshold) -> np.ndarray:
    lam = np.asarray(threshold, dtype=np.float64)
    if np.any(lam < 0.0):
        raise InputError("shrinkage threshold must be non-negative")
    return lam


def soft_shrink(c, threshold):
    """sign(c) * max(|c| - threshold, 0); accepts scalars or arrays."""
    lam = _check_threshold(threshold)
    out = np.sign(c) * np.maximum(np.abs(c) - lam, 0.0)
    return float(out) if np.isscalar(c) and np.isscalar(threshold) else out


def hard_shrink(c, threshold):
    """c where |c| > threshold, else 0; accepts scalars or arrays."""
    lam = _check_threshold(threshold)
    out = np.where(np.abs(c) > lam, c, 0.0)
    return float(out) if np.isscalar(c) and np.isscalar(threshold) else out


def hybrid_shrink_band(
    band: np.ndarray, thresholds: ThresholdSeries, qrs: RegionMask
) -> np.ndarray:
    """Hard shrinkage inside QRS windows, soft shrinkage everywhere else."""
    band = np.asarray(band, dtype=np.float64)
    if band.shape != thresholds.values.shape or band.shape != qrs.flags.shape:
        raise InputError("band, thresholds and mask must have equal lengths")
    return np.where(
        qrs.flags,
        hard_shrink(band, thresholds.values),
        soft_shrink(band, thresholds.values),
    )


@dataclass(frozen=True)
class QrsDetectorConfig:
    """Settings for the energy-based R-peak detector.

    The chain is the classic one: bandpass to the QRS-dominant band,
    differentiate, square, integrate over a short window, then pick peaks
    above an adaptive (signal-relative) threshold with a refractory gap.
    The bandpass rejects mains interference, so detection runs directly on
    the contaminated input.
    """

    bandpass_low_hz: float = 5.0
    bandpass_high_hz: float = 15.0
    integration_window_ms: float = 150.0
    refractory_ms: float = 250.0
    threshold_fraction: float = 0.25

    def __post_init__(self) -> None:
        if not 0.0 < self.bandpass_low_hz < self.bandpass_high_hz:
            raise InputError("bandpass edges must satisfy 0 < low < high")
        if self.integration_window_ms <= 0.0 or self.refractory_ms <= 0.0:
            raise InputError("detector windows must be positive")
        if not 0.0 < self.threshold_fraction < 1.0:
            raise InputError("threshold_fraction must lie in (0, 1)")


def detect_r_peaks(s: Signal, config: QrsDetectorConfig = QrsDetectorConfig()) -> np.ndarray:
    """R-peak fiducial sample indices, deterministic for a given input."""
    n = len(s)
    fs = s.sample_rate_hz
    integ_w = max(1, int(round(config.integration_window_ms * fs / 1000.0)))
    refractory = max(1, int(round(config.refractory_ms * fs / 1000.0)))
    if n < max(integ_w, refractory, 19):
        raise InputError("signal shorter than one detector window")
    if config.bandpass_high_hz >= fs / 2:
        raise InputError("detector bandpass exceeds Nyquist")
    sos = butter(
        2,
        [config.bandpass_low_hz / (fs / 2), config.bandpass_high_hz / (fs / 2)],
        btype="bandpass",
        output="sos",
    )
    bandpassed = sosfiltfilt(sos, s.samples)
    energy = np.gradient(bandpassed) ** 2
    integrated = np.convolve(energy, np.ones(integ_w) / integ_w, mode="same")
    height = config.threshold_fraction * np.percentile(integrated, 98.0)
    if height <= 0.0:
        return np.zeros(0, dtype=np.intp)
    peaks, _ = find_peaks(integrated, height=height, distance=refractory)
    # refine each fiducial to the strongest nearby bandpassed deflection
    half = int(round(0.100 * fs))
    refined = []
    for p in peaks:
        a, b = max(0, p - half), min(n, p + half + 1)
        refined.append(a + int(np.argmax(np.abs(bandpassed[a:b]))))
    refined = sorted(set(refined))
    # refinement can pull neighbours together; re-impose the refractory gap
    fiducials: list[int] = []
    for r in refined:
        if not fiducials or r - fiducials[-1] >= refractory:
            fiducials.append(r)
    return np.asarray(fiducials, dtype=np.intp)


def detect_qrs_regions(
    s: Signal,
    config: QrsDetectorConfig = QrsDetectorConfig(),
    window_ms: float = 120.0,
) -> RegionMask:
    """Mask a fixed-width window centered on each detected R peak."""
    if not window_ms > 0.0:
        raise InputError("window_ms must be positive")
    fiducials = detect_r_peaks(s, config)
    flags = np.zeros(len(s), dtype=bool)
    half = int(round(window_ms * s.sample_rate_hz / 2000.0))
    for c in fiducials:
        flags[max(0, c - half) : min(len(s), c + half + 1)] = True
    return RegionMask(flags=flags)
