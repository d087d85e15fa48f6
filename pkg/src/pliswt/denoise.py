"""End-to-end mains-interference removal pipeline.

Decompose with the stationary wavelet transform, shrink each detail band
against its own moving-median threshold (hard inside QRS windows, soft
elsewhere), pass the approximation band through untouched, reconstruct.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .core import InputError, Signal
from .shrinkage import (
    QrsDetectorConfig,
    detect_qrs_regions,
    hybrid_shrink_band,
    moving_median_threshold,
)
from .swt import swt_forward, swt_inverse
from .wavelets import daubechies_filters


@dataclass(frozen=True)
class DenoiseConfig:
    """Pipeline parameters.

    threshold_scale multiplies the moving-median threshold before
    shrinkage.  The median of a sinusoidal band sits at ~0.71x the tone
    envelope, and summed harmonics crest well above their combined RMS, so
    a plain median leaves interference peaks untouched at low SIR; 4x
    covers the worst-case harmonic crest with margin while leaving clean
    recordings essentially unchanged.
    """

    levels: int = 4
    wavelet_order: int = 6
    median_window_ms: float = 200.0
    qrs_window_ms: float = 120.0
    threshold_scale: float = 4.0
    detector: QrsDetectorConfig = field(default_factory=QrsDetectorConfig)

    def __post_init__(self) -> None:
        if self.levels < 1:
            raise InputError("levels must be >= 1")
        if self.median_window_ms <= 0.0 or self.qrs_window_ms <= 0.0:
            raise InputError("window durations must be positive")
        if not self.threshold_scale > 0.0:
            raise InputError("threshold_scale must be positive")


def denoise(s: Signal, config: DenoiseConfig = DenoiseConfig()) -> Signal:
    """Remove powerline interference from one single-lead recording."""
    filters = daubechies_filters(config.wavelet_order)
    decomposition = swt_forward(s, config.levels, filters)
    qrs = detect_qrs_regions(s, config.detector, config.qrs_window_ms)
    shrunk = []
    for scale, band in enumerate(decomposition.details, start=1):
        thresholds = moving_median_threshold(
            band, config.median_window_ms, s.sample_rate_hz, scale=scale
        )
        shrunk.append(
            hybrid_shrink_band(band, thresholds.scaled(config.threshold_scale), qrs)
        )
    return swt_inverse(replace(decomposition, details=tuple(shrunk)))
