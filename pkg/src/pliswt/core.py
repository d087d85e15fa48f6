"""Shared waveform types and basic statistics.

All types are immutable value objects; arrays are stored as read-only
float64 so instances can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class InputError(ValueError):
    """An operation received input that violates its contract."""


def _as_readonly_f64(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != 1:
        raise InputError(f"expected a 1-D sample sequence, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Signal:
    """A uniformly sampled real-valued waveform (amplitudes in mV)."""

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self) -> None:
        samples = _as_readonly_f64(self.samples)
        rate = float(self.sample_rate_hz)
        if not np.isfinite(rate) or rate <= 0.0:
            raise InputError(f"sample_rate_hz must be positive and finite, got {rate}")
        if samples.size and not np.all(np.isfinite(samples)):
            raise InputError("samples contain NaN or Inf")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", rate)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz


@dataclass(frozen=True)
class SirLevelDb:
    """A signal-to-interference ratio in decibels."""

    value: float

    def __post_init__(self) -> None:
        value = float(self.value)
        if not np.isfinite(value):
            raise InputError(f"SIR must be finite, got {value}")
        object.__setattr__(self, "value", value)


def _require_nonempty(s: Signal, what: str) -> None:
    if len(s) == 0:
        raise InputError(f"{what}: empty signal")


def signal_power(s: Signal) -> float:
    """Mean squared amplitude (mV^2)."""
    _require_nonempty(s, "signal_power")
    return float(np.mean(np.square(s.samples)))


def population_std(s: Signal) -> float:
    """Standard deviation with the population convention (divide by N)."""
    _require_nonempty(s, "population_std")
    return float(np.std(s.samples))
