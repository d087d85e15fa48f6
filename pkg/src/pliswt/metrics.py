"""Adaptive signed correlation index (ASCI).

Per-sample agreement score: +1 where |x - x_hat| <= xi, -1 otherwise,
averaged over the scored samples.  The tolerance xi defaults to 5% of the
population standard deviation of the reference signal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import InputError, Signal, population_std


@dataclass(frozen=True, eq=False)
class AsciReport:
    value: float
    xi: float
    agreement: np.ndarray  # full-length boolean mask, prefix included
    excluded_prefix_samples: int

    def __post_init__(self) -> None:
        if not -1.0 <= self.value <= 1.0:
            raise InputError("ASCI value must lie in [-1, 1]")
        agreement = np.asarray(self.agreement)
        agreement.setflags(write=False)
        object.__setattr__(self, "agreement", agreement)


def asci(
    x: Signal,
    x_hat: Signal,
    xi_override: float | None = None,
    excluded_prefix_samples: int = 0,
) -> AsciReport:
    """Score x_hat against the reference x.

    Ties |difference| == xi count as agreement.  An optional prefix can be
    excluded from scoring (e.g. to skip an adaptive filter's transient);
    xi is still computed from the full reference.
    """
    if len(x) == 0:
        raise InputError("asci: empty signal")
    if len(x) != len(x_hat):
        raise InputError("asci: signals must have equal lengths")
    if x.sample_rate_hz != x_hat.sample_rate_hz:
        raise InputError("asci: signals must share a sample rate")
    if excluded_prefix_samples < 0 or excluded_prefix_samples >= len(x):
        raise InputError("excluded prefix must leave at least one scored sample")
    if xi_override is not None:
        xi = float(xi_override)
        if xi < 0.0 or not np.isfinite(xi):
            raise InputError("xi must be finite and >= 0")
    else:
        xi = 0.05 * population_std(x)
    agreement = np.abs(x.samples - x_hat.samples) <= xi
    scored = agreement[excluded_prefix_samples:]
    matches = int(scored.sum())
    value = (2 * matches - scored.size) / scored.size
    return AsciReport(
        value=value,
        xi=xi,
        agreement=agreement,
        excluded_prefix_samples=excluded_prefix_samples,
    )
