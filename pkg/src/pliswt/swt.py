"""Stationary (undecimated) wavelet transform.

The decomposition follows the "a trous" scheme: the signal is never
subsampled and the filters are dilated by inserting 2^(j-1) - 1 zeros
between taps at level j.  Boundary handling is periodic, which keeps the
transform exactly invertible and exactly shift-covariant.  Each band is
rotated so that a coefficient at index n describes signal content at time
n (the cumulative filter group delay is compensated with integer circular
shifts, which the inverse undoes).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import InputError, Signal
from .wavelets import WaveletFilterPair, daubechies_filters


def _circular_convolve(x: np.ndarray, taps: np.ndarray, dilation: int) -> np.ndarray:
    """y[n] = sum_k taps[k] * x[(n - dilation*k) mod L]."""
    y = taps[0] * x
    for k in range(1, len(taps)):
        y += taps[k] * np.roll(x, dilation * k)
    return y


def _circular_correlate(x: np.ndarray, taps: np.ndarray, dilation: int) -> np.ndarray:
    """y[n] = sum_k taps[k] * x[(n + dilation*k) mod L] (time-reversed filter)."""
    y = taps[0] * x
    for k in range(1, len(taps)):
        y += taps[k] * np.roll(x, -dilation * k)
    return y


def _alignment_shift(n_taps: int, level: int) -> int:
    # cumulative group delay of the analysis chain down to `level`,
    # (N-1)/2 * (2^level - 1), floored to an integer number of samples
    return ((n_taps - 1) * ((1 << level) - 1)) // 2


def _dilated_support(n_taps: int, level: int) -> int:
    return (n_taps - 1) * (1 << (level - 1)) + 1


@dataclass(frozen=True, eq=False)
class WaveletDecomposition:
    """Undecimated detail bands for scales 1..levels plus the final approximation."""

    details: tuple[np.ndarray, ...]
    approximation: np.ndarray
    levels: int
    filter: WaveletFilterPair
    original_length: int
    sample_rate_hz: float

    def __post_init__(self) -> None:
        if self.levels < 1 or len(self.details) != self.levels:
            raise InputError("number of detail bands must equal levels (>= 1)")
        bands = (*self.details, self.approximation)
        for band in bands:
            if band.shape != (self.original_length,):
                raise InputError("every band must match the original length")
            if not np.all(np.isfinite(band)):
                raise InputError("bands contain NaN or Inf")
        frozen = []
        for band in self.details:
            arr = np.array(band, dtype=np.float64, copy=True)
            arr.setflags(write=False)
            frozen.append(arr)
        approx = np.array(self.approximation, dtype=np.float64, copy=True)
        approx.setflags(write=False)
        object.__setattr__(self, "details", tuple(frozen))
        object.__setattr__(self, "approximation", approx)


def swt_forward(
    s: Signal, levels: int = 4, filter: WaveletFilterPair | None = None
) -> WaveletDecomposition:
    """Decompose a signal into `levels` detail bands plus one approximation.

    The signal must be at least as long as the deepest dilated filter
    support, otherwise the periodic convolution would wrap onto itself.
    """
    if filter is None:
        filter = daubechies_filters(6)
    if levels < 1:
        raise InputError(f"levels must be >= 1, got {levels}")
    n = len(s)
    if n == 0:
        raise InputError("swt_forward: empty signal")
    support = _dilated_support(len(filter), levels)
    if n < support:
        raise InputError(
            f"signal length {n} is shorter than the level-{levels} "
            f"filter support {support}"
        )
    lo, hi = filter.lowpass, filter.highpass
    approx = s.samples.astype(np.float64)
    details = []
    for j in range(1, levels + 1):
        dilation = 1 << (j - 1)
        shift = _alignment_shift(len(filter), j)
        detail = _circular_convolve(approx, hi, dilation)
        approx = _circular_convolve(approx, lo, dilation)
        details.append(np.roll(detail, -shift))
    approx = np.roll(approx, -_alignment_shift(len(filter), levels))
    return WaveletDecomposition(
        details=tuple(details),
        approximation=approx,
        levels=levels,
        filter=filter,
        original_length=n,
        sample_rate_hz=s.sample_rate_hz,
    )


def swt_inverse(d: WaveletDecomposition) -> Signal:
    """Exact inverse of :func:`swt_forward` for unmodified coefficients."""
    lo, hi = d.filter.lowpass, d.filter.highpass
    n_taps = len(d.filter)
    approx = np.roll(d.approximation, _alignment_shift(n_taps, d.levels))
    for j in range(d.levels, 0, -1):
        dilation = 1 << (j - 1)
        detail = np.roll(d.details[j - 1], _alignment_shift(n_taps, j))
        approx = 0.5 * (
            _circular_correlate(approx, lo, dilation)
            + _circular_correlate(detail, hi, dilation)
        )
    return Signal(samples=approx, sample_rate_hz=d.sample_rate_hz)
