"""Rational-rate polyphase resampling with a Kaiser windowed-sinc lowpass.

The filter is linear-phase and the group delay is compensated exactly on
the upsampled grid, so output sample j sits at input time j * down / up.
Inputs are reflection-padded before filtering to suppress edge transients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.signal import upfirdn

from .core import InputError, Signal

_MAX_RATIO_TERM = 10_000
_KAISER_BETA = 8.6


@dataclass(frozen=True)
class ResampleSpec:
    """A reduced rational rate conversion target_hz / source_hz = up / down."""

    source_hz: float
    target_hz: float
    up: int
    down: int
    filter_half_taps: int = 64

    @classmethod
    def from_rates(
        cls, source_hz: float, target_hz: float, filter_half_taps: int = 64
    ) -> "ResampleSpec":
        if source_hz <= 0.0 or target_hz <= 0.0:
            raise InputError("sample rates must be positive")
        if filter_half_taps < 1:
            raise InputError("filter_half_taps must be >= 1")
        ratio = Fraction(target_hz) / Fraction(source_hz)
        if ratio.numerator > _MAX_RATIO_TERM or ratio.denominator > _MAX_RATIO_TERM:
            raise InputError(
                f"rate ratio {target_hz}/{source_hz} reduces to "
                f"{ratio.numerator}/{ratio.denominator}; terms above "
                f"{_MAX_RATIO_TERM} are not representable"
            )
        return cls(
            source_hz=float(source_hz),
            target_hz=float(target_hz),
            up=int(ratio.numerator),
            down=int(ratio.denominator),
            filter_half_taps=filter_half_taps,
        )


def _design_lowpass(spec: ResampleSpec) -> np.ndarray:
    """Windowed sinc at min(source, target)/2 on the upsampled grid."""
    num_taps = 2 * spec.filter_half_taps * max(spec.up, spec.down) + 1
    cutoff_hz = min(spec.source_hz, spec.target_hz) / 2.0
    upsampled_nyquist = spec.source_hz * spec.up / 2.0
    normalized = cutoff_hz / upsampled_nyquist
    mid = (num_taps - 1) / 2.0
    k = np.arange(num_taps) - mid
    taps = normalized * np.sinc(normalized * k) * np.kaiser(num_taps, _KAISER_BETA)
    taps /= taps.sum()
    return taps * spec.up  # restore amplitude lost to zero stuffing


def resample(s: Signal, target_hz: float, filter_half_taps: int = 64) -> Signal:
    """Resample to target_hz; output length is ceil(len * up / down)."""
    if len(s) == 0:
        raise InputError("resample: empty signal")
    spec = ResampleSpec.from_rates(s.sample_rate_hz, target_hz, filter_half_taps)
    if spec.up == 1 and spec.down == 1:
        return Signal(samples=s.samples, sample_rate_hz=float(target_hz))
    taps = _design_lowpass(spec)
    delay = (len(taps) - 1) // 2  # group delay on the upsampled grid
    out_len = -((-len(s) * spec.up) // spec.down)

    # reflect-pad so the filter never sees a bare edge; grow the left pad
    # until the compensated delay lands on the output sample grid
    pad = -(-delay // spec.up)
    while (delay + pad * spec.up) % spec.down != 0:
        pad += 1
    if pad >= len(s):
        raise InputError(
            f"signal of length {len(s)} is too short for the resampling "
            f"filter (needs > {pad} samples)"
        )
    padded = np.pad(s.samples, pad, mode="reflect")
    filtered = upfirdn(taps, padded, up=spec.up, down=spec.down)
    start = (delay + pad * spec.up) // spec.down
    out = filtered[start : start + out_len]
    if out.size != out_len:
        raise AssertionError("resample output slice out of bounds")
    return Signal(samples=out, sample_rate_hz=float(target_hz))
