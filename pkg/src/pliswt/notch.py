"""Adaptive harmonic notch filter, the reference method for comparison.

A cascade of second-order notches, one per harmonic, all slaved to a
single fundamental-frequency estimate.  Each biquad uses the
unity-passband normalization (gain exactly 1 at DC and Nyquist, poles at
a fixed radius), and the shared frequency estimate descends the gradient
of the first stage's instantaneous output power.  Only the notch angle
adapts, so the filter is unconditionally stable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import InputError, Signal


@dataclass(frozen=True)
class NotchConfig:
    fundamental_hz: float = 50.0
    num_harmonics: int = 5
    adaptation_rate: float = 1e-4
    notch_pole_radius: float = 0.985
    freq_clamp_fraction: float = 0.05

    def __post_init__(self) -> None:
        if self.fundamental_hz <= 0.0:
            raise InputError("fundamental_hz must be positive")
        if self.num_harmonics < 1:
            raise InputError("num_harmonics must be >= 1")
        if not self.adaptation_rate > 0.0:
            raise InputError("adaptation_rate must be positive")
        if not 0.0 < self.notch_pole_radius < 1.0:
            raise InputError("notch_pole_radius must lie in (0, 1)")
        if not 0.0 < self.freq_clamp_fraction < 0.5:
            raise InputError("freq_clamp_fraction must lie in (0, 0.5)")


@njit(cache=True)
def _notch_cascade(x, fs, f0, num_harmonics, mu, radius, clamp_fraction):
    n = x.shape[0]
    y = np.empty(n)
    freq_trace = np.empty(n)
    b0 = (1.0 + radius * radius) / 2.0
    r2 = radius * radius
    theta = 2.0 * np.pi * f0 / fs
    theta_min = theta * (1.0 - clamp_fraction)
    theta_max = theta * (1.0 + clamp_fraction)
    x_state = np.zeros((num_harmonics, 2))
    y_state = np.zeros((num_harmonics, 2))
    grad_prev1 = 0.0
    grad_prev2 = 0.0
    # seed the power normalizer so the very first updates are already scaled
    power = 1e-30
    warmup = min(n, 1000)
    for i in range(warmup):
        power += x[i] * x[i]
    power /= warmup
    for i in range(n):
        v = x[i]
        power = 0.999 * power + 0.001 * x[i] * x[i]
        stage1_out = 0.0
        grad = 0.0
        for m in range(num_harmonics):
            beta = np.cos((m + 1) * theta)
            out = (
                b0 * (v - 2.0 * beta * x_state[m, 0] + x_state[m, 1])
                + 2.0 * b0 * beta * y_state[m, 0]
                - r2 * y_state[m, 1]
            )
            if m == 0:
                grad = (
                    -2.0 * b0 * x_state[0, 0]
                    + 2.0 * b0 * y_state[0, 0]
                    + 2.0 * b0 * beta * grad_prev1
                    - r2 * grad_prev2
                )
                grad_prev2 = grad_prev1
                grad_prev1 = grad
                stage1_out = out
            x_state[m, 1] = x_state[m, 0]
            x_state[m, 0] = v
            y_state[m, 1] = y_state[m, 0]
            y_state[m, 0] = out
            v = out
        y[i] = v
        # d(out^2)/d(theta) = 2 * out * d(out)/d(beta) * (-sin(theta));
        # descend with a power-normalized step so behavior is amplitude-invariant
        theta += mu * stage1_out * grad * np.sin(theta) / (power + 1e-30)
        if theta < theta_min:
            theta = theta_min
        elif theta > theta_max:
            theta = theta_max
        freq_trace[i] = theta * fs / (2.0 * np.pi)
    return y, freq_trace


def adaptive_notch_details(
    s: Signal, config: NotchConfig = NotchConfig()
) -> tuple[Signal, np.ndarray]:
    """Filter and also return the per-sample fundamental frequency estimate."""
    if len(s) == 0:
        raise InputError("adaptive_notch: empty signal")
    if s.sample_rate_hz <= 2.0 * config.num_harmonics * config.fundamental_hz:
        raise InputError(
            "sample rate violates Nyquist for the highest tracked harmonic"
        )
    y, freq = _notch_cascade(
        s.samples,
        s.sample_rate_hz,
        config.fundamental_hz,
        config.num_harmonics,
        config.adaptation_rate,
        config.notch_pole_radius,
        config.freq_clamp_fraction,
    )
    return Signal(samples=y, sample_rate_hz=s.sample_rate_hz), freq


def adaptive_notch(s: Signal, config: NotchConfig = NotchConfig()) -> Signal:
    """Run the adaptive harmonic notch cascade over a recording."""
    return adaptive_notch_details(s, config)[0]
