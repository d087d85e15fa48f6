import numpy as np
import pytest

from pliswt import (
    InputError,
    NotchConfig,
    Signal,
    adaptive_notch,
    adaptive_notch_details,
    mix_at_sir,
    synth_ecg,
)

from oracles import total_power

FS = 1000.0


def sig(samples, fs=FS):
    return Signal(samples=np.asarray(samples, dtype=float), sample_rate_hz=fs)


def test_zero_in_zero_out():
    out = adaptive_notch(sig(np.zeros(5000)))
    assert np.all(out.samples == 0.0)


def test_pure_tone_suppression():
    # regression floor: >= 30 dB suppression of a steady 50 Hz tone once locked
    t = np.arange(int(10 * FS)) / FS
    tone = np.cos(2 * np.pi * 50.0 * t + 0.7)
    out = adaptive_notch(sig(tone))
    tail = slice(-int(2 * FS), None)
    suppression_db = 10 * np.log10(total_power(tone[tail]) / total_power(out.samples[tail]))
    assert suppression_db >= 30.0


def test_dc_passes_with_unity_gain():
    # analytic oracle: each stage is b0(1 - 2b z^-1 + z^-2)/(1 - 2b0*b z^-1 + r^2 z^-2),
    # b0 = (1 + r^2)/2, whose gain at z = 1 is b0(2 - 2b)/(1 - 2b0*b + r^2) = 1
    config = NotchConfig()
    r = config.notch_pole_radius
    b0 = (1 + r * r) / 2
    cascade_dc_gain = 1.0
    for m in range(1, config.num_harmonics + 1):
        b = np.cos(2 * np.pi * m * config.fundamental_hz / FS)
        cascade_dc_gain *= b0 * (2 - 2 * b) / (1 - 2 * b0 * b + r * r)
    assert cascade_dc_gain == pytest.approx(1.0, rel=1e-12)

    # so a constant input must settle back to itself
    constant = 5.0
    out = adaptive_notch(sig(np.full(int(4 * FS), constant)), config)
    tail = out.samples[-int(FS):]
    assert np.max(np.abs(tail - constant)) <= 0.005 * constant


def test_frequency_step_tracking():
    # tone steps 49.5 -> 50.5 Hz mid-signal; the estimate must land within
    # 0.05 Hz inside the 6 s horizon after the step (frozen from first run)
    fs = FS
    n1, n2 = int(6 * fs), int(8 * fs)
    phase = np.cumsum(
        2 * np.pi * np.concatenate([np.full(n1, 49.5), np.full(n2, 50.5)]) / fs
    )
    tone = np.cos(phase)
    _, freq = adaptive_notch_details(sig(tone))
    settled = freq[n1 + int(6 * fs):]
    assert np.all(np.abs(settled - 50.5) <= 0.05)
    # and it had locked onto the first frequency before the step
    assert np.all(np.abs(freq[n1 - int(fs): n1] - 49.5) <= 0.05)


def test_estimate_stays_inside_clamp():
    rng = np.random.default_rng(0)
    config = NotchConfig()
    s = sig(rng.standard_normal(int(5 * FS)))
    _, freq = adaptive_notch_details(s, config)
    low = config.fundamental_hz * (1 - config.freq_clamp_fraction)
    high = config.fundamental_hz * (1 + config.freq_clamp_fraction)
    assert np.all(freq >= low - 1e-9)
    assert np.all(freq <= high + 1e-9)


def test_output_length_and_determinism():
    s, _ = synth_ecg(5.0, FS, 70.0, seed=3)
    a = adaptive_notch(s)
    b = adaptive_notch(s)
    assert len(a) == len(s)
    assert np.array_equal(a.samples, b.samples)


def test_degrades_at_low_sir():
    # the documented failure mode: residual interference grows with the
    # injected interference level
    from pliswt import PliConfig, asci, synthesize_pli

    clean, _ = synth_ecg(20.0, FS, 70.0, seed=4)
    pli = synthesize_pli(20.0, FS, PliConfig(seed=11))
    scores = {}
    for sir in (15.0, -10.0):
        noisy, _ = mix_at_sir(clean, pli, sir)
        out = adaptive_notch(noisy)
        scores[sir] = asci(clean, out, excluded_prefix_samples=1000).value
    assert scores[-10.0] < scores[15.0] - 0.25


def test_nyquist_violation_rejected():
    with pytest.raises(InputError):
        adaptive_notch(sig(np.ones(1000), fs=400.0))


def test_empty_rejected():
    with pytest.raises(InputError):
        adaptive_notch(sig([]))


def test_config_validation():
    with pytest.raises(InputError):
        NotchConfig(notch_pole_radius=1.0)
    with pytest.raises(InputError):
        NotchConfig(adaptation_rate=0.0)
    with pytest.raises(InputError):
        NotchConfig(num_harmonics=0)
