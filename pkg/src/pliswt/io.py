"""Single-column CSV serialization for signals.

Format: one decimal sample per line, optionally preceded by comment lines
starting with '#'.  A comment of the form ``# sample_rate_hz = 1000`` carries
the rate; an explicit argument overrides it.  Samples are written with 17
significant digits so a save/load round trip is bit-exact.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

import numpy as np

from .core import InputError, Signal

_RATE_COMMENT = re.compile(r"#\s*sample_rate_hz\s*=\s*(\S+)")


def save_signal_csv(signal: Signal, path: str | Path) -> None:
    lines = [f"# sample_rate_hz = {signal.sample_rate_hz:.17g}"]
    lines.extend(f"{v:.17g}" for v in signal.samples)
    Path(path).write_text("\n".join(lines) + "\n")


def load_signal_csv(path: str | Path, sample_rate_hz: float | None = None) -> Signal:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"no such file: {path}")
    header_rate = None
    values: list[float] = []
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                match = _RATE_COMMENT.match(line)
                if match:
                    try:
                        header_rate = float(match.group(1))
                    except ValueError as exc:
                        raise InputError(
                            f"{path}:{lineno}: malformed sample rate header"
                        ) from exc
                continue
            try:
                value = float(line)
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: malformed row {line!r}") from exc
            if not math.isfinite(value):
                raise InputError(f"{path}:{lineno}: non-finite sample {line!r}")
            values.append(value)
    if not values:
        raise InputError(f"{path}: empty signal")
    rate = sample_rate_hz if sample_rate_hz is not None else header_rate
    if rate is None:
        raise InputError(
            f"{path}: no sample rate header; pass sample_rate_hz explicitly"
        )
    return Signal(samples=np.asarray(values), sample_rate_hz=rate)
