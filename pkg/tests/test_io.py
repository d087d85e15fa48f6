import numpy as np
import pytest

from pliswt import InputError, Signal, load_signal_csv, save_signal_csv


def test_format_definition(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("0.0\n1.5\n-0.25\n")
    s = load_signal_csv(path, sample_rate_hz=1000.0)
    assert np.array_equal(s.samples, [0.0, 1.5, -0.25])
    assert s.sample_rate_hz == 1000.0


def test_empty_file_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(InputError, match="empty signal"):
        load_signal_csv(path, sample_rate_hz=1000.0)


def test_comment_only_file_rejected(tmp_path):
    path = tmp_path / "comments.csv"
    path.write_text("# sample_rate_hz = 500\n# nothing else\n")
    with pytest.raises(InputError, match="empty signal"):
        load_signal_csv(path)


def test_round_trip_is_bit_exact(tmp_path):
    rng = np.random.default_rng(0)
    original = Signal(rng.standard_normal(1000) * 1e3, 360.0)
    path = tmp_path / "rt.csv"
    save_signal_csv(original, path)
    loaded = load_signal_csv(path)
    assert np.array_equal(loaded.samples, original.samples)
    assert loaded.sample_rate_hz == original.sample_rate_hz


def test_missing_file(tmp_path):
    with pytest.raises(InputError, match="no such file"):
        load_signal_csv(tmp_path / "absent.csv")


def test_malformed_row_reports_line_number(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0\n2.0\nbogus\n")
    with pytest.raises(InputError, match=":3"):
        load_signal_csv(path, sample_rate_hz=100.0)


def test_nonfinite_row_rejected(tmp_path):
    path = tmp_path / "nan.csv"
    path.write_text("1.0\nnan\n")
    with pytest.raises(InputError, match="non-finite"):
        load_signal_csv(path, sample_rate_hz=100.0)


def test_header_rate_used_and_overridable(tmp_path):
    path = tmp_path / "hdr.csv"
    path.write_text("# sample_rate_hz = 250\n1.0\n2.0\n")
    assert load_signal_csv(path).sample_rate_hz == 250.0
    assert load_signal_csv(path, sample_rate_hz=500.0).sample_rate_hz == 500.0


def test_rate_required_when_absent(tmp_path):
    path = tmp_path / "norate.csv"
    path.write_text("1.0\n")
    with pytest.raises(InputError, match="sample rate"):
        load_signal_csv(path)
