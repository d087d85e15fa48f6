import numpy as np
import pytest

from pliswt import InputError, ResampleSpec, Signal, resample

from oracles import band_power


def sig(samples, fs):
    return Signal(samples=np.asarray(samples, dtype=float), sample_rate_hz=fs)


class TestSpec:
    def test_reduction_128_to_1000(self):
        spec = ResampleSpec.from_rates(128.0, 1000.0)
        assert (spec.up, spec.down) == (125, 16)

    def test_identity_ratio(self):
        spec = ResampleSpec.from_rates(360.0, 360.0)
        assert (spec.up, spec.down) == (1, 1)

    def test_unrepresentable_ratio_rejected(self):
        with pytest.raises(InputError):
            ResampleSpec.from_rates(128.0, 1000.1)
        with pytest.raises(InputError):
            ResampleSpec.from_rates(1.0, np.pi)

    def test_bad_rates_rejected(self):
        with pytest.raises(InputError):
            ResampleSpec.from_rates(0.0, 100.0)


class TestResample:
    def test_identity_when_rates_match(self):
        rng = np.random.default_rng(0)
        s = sig(rng.standard_normal(500), 128.0)
        out = resample(s, 128.0)
        assert np.array_equal(out.samples, s.samples)

    def test_output_length_128_to_1000(self):
        s = sig(np.zeros(76800), 128.0)  # ten minutes at 128 Hz
        out = resample(s, 1000.0)
        assert len(out) == 600000
        assert out.sample_rate_hz == 1000.0

    def test_sinusoid_against_analytic_oracle(self):
        # 5 Hz tone upsampled 128 -> 1000 must match the analytic waveform
        fs_in, fs_out, dur = 128.0, 1000.0, 10.0
        t_in = np.arange(int(dur * fs_in)) / fs_in
        out = resample(sig(np.sin(2 * np.pi * 5.0 * t_in), fs_in), fs_out)
        t_out = np.arange(len(out)) / fs_out
        expected = np.sin(2 * np.pi * 5.0 * t_out)
        # exclude one filter length at each edge
        guard = 2 * 64 * 125 // 125 + 1000
        inner = slice(guard, -guard)
        err = np.sqrt(np.mean((out.samples[inner] - expected[inner]) ** 2))
        assert err < 1e-3

    def test_linearity(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal(1280)
        y = rng.standard_normal(1280)
        a, b = 1.7, -0.4
        combined = resample(sig(a * x + b * y, 128.0), 1000.0)
        separate = (
            a * resample(sig(x, 128.0), 1000.0).samples
            + b * resample(sig(y, 128.0), 1000.0).samples
        )
        assert np.max(np.abs(combined.samples - separate)) < 1e-12

    @pytest.mark.parametrize("freq", [5.0, 20.0, 45.0])
    def test_passband_flatness(self, freq):
        # tones below 0.4 * min rate keep their amplitude within 0.1 dB
        fs_in, fs_out = 128.0, 1000.0
        t = np.arange(int(20 * fs_in)) / fs_in
        out = resample(sig(np.sin(2 * np.pi * freq * t), fs_in), fs_out)
        inner = out.samples[2000:-2000]
        measured = np.sqrt(2 * np.mean(inner**2))  # amplitude of a sine
        assert abs(20 * np.log10(measured / 1.0)) < 0.1

    def test_images_suppressed(self):
        # upsampling images above the source Nyquist must sit 60 dB down
        fs_in, fs_out = 128.0, 1000.0
        t = np.arange(int(30 * fs_in)) / fs_in
        out = resample(sig(np.sin(2 * np.pi * 30.0 * t), fs_in), fs_out)
        inner = out.samples[2000:-2000]
        passband = band_power(inner, fs_out, 29.0, 31.0)
        images = band_power(inner, fs_out, 70.0, 500.0)
        assert 10 * np.log10(passband / images) > 60.0

    def test_downsampling_roundtrip(self):
        fs_in, fs_out = 1000.0, 128.0
        t = np.arange(int(10 * fs_in)) / fs_in
        out = resample(sig(np.sin(2 * np.pi * 5.0 * t), fs_in), fs_out)
        t_out = np.arange(len(out)) / fs_out
        inner = slice(200, -200)
        err = np.sqrt(np.mean((out.samples[inner] - np.sin(2 * np.pi * 5.0 * t_out)[inner]) ** 2))
        assert err < 1e-3

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            resample(sig([], 128.0), 1000.0)

    def test_too_short_rejected(self):
        with pytest.raises(InputError):
            resample(sig(np.ones(10), 128.0), 1000.0)
