import numpy as np
import pytest

from hxdft.core import formats
from hxdft.core.algebra import AlgebraTag
from hxdft.core.dft import Signal1D, Signal2D
from hxdft.core.errors import RootValidationError, SignalFormatError


def test_signal_round_trip_quaternion(tmp_path, rng):
    signal = Signal1D(rng.standard_normal((4, 8)), AlgebraTag.QUATERNION)
    path = tmp_path / "signal.csv"
    formats.write_signal(path, signal)
    loaded = formats.read_signal(path)
    assert loaded.algebra is AlgebraTag.QUATERNION
    np.testing.assert_array_equal(loaded.data, signal.data)


def test_signal_round_trip_is_bit_exact(rng):
    values = rng.standard_normal(1000) * 10.0 ** rng.integers(-300, 300, 1000)
    signal = Signal1D(values.reshape(4, 250))
    np.testing.assert_array_equal(formats.parse_signal(formats.format_signal(signal)).data, signal.data)


def test_complex_signal_layout(rng):
    signal = Signal1D(np.array([[1 + 2j, 3 - 4j]]))
    text = formats.format_signal(signal)
    assert text.splitlines() == ["hxdft-signal v1 generic complex 1 2", "1,2,3,-4"]
    np.testing.assert_array_equal(formats.parse_signal(text).data, signal.data)


def test_signal2d_round_trip(tmp_path, rng):
    grid = rng.standard_normal((3, 5, 4)) + 1j * rng.standard_normal((3, 5, 4))
    signal = Signal2D.from_coefficients(grid, AlgebraTag.BIQUATERNION)
    path = tmp_path / "grid.csv"
    formats.write_signal(path, signal)
    assert path.read_text().splitlines()[0] == "hxdft-signal v1 biquaternion complex 4 3 5"
    loaded = formats.read_signal(path)
    assert isinstance(loaded, Signal2D)
    np.testing.assert_array_equal(loaded.data, signal.data)


def test_signal2d_outside_image_written_as_blocks(rng):
    signal = Signal2D(rng.standard_normal((2, 3, 4, 4)), AlgebraTag.QUATERNION)
    text = formats.format_signal(signal)
    lines = text.splitlines()
    assert lines[0] == "hxdft-signal v1 generic real 4 2 3"
    assert len(lines) == 1 + 4 * 2
    assert all(len(line.split(",")) == 4 * 3 for line in lines[1:])
    loaded = formats.parse_signal(text)
    assert loaded.algebra is None
    np.testing.assert_array_equal(loaded.data, signal.data)


def test_generic_complex_blocks_round_trip(rng):
    data = rng.standard_normal((3, 2, 2, 2)) + 1j * rng.standard_normal((3, 2, 2, 2))
    signal = Signal2D(data)
    loaded = formats.parse_signal(formats.format_signal(signal))
    np.testing.assert_array_equal(loaded.data, signal.data)


@pytest.mark.parametrize("text, message", [
    ("", "Empty"),
    ("not-a-signal v1 generic real 1 2\n1,2\n", "header"),
    ("hxdft-signal v2 generic real 1 2\n1,2\n", "version"),
    ("hxdft-signal v1 generic real 1 2\n1,2,3\n", "expected 2 values"),
    ("hxdft-signal v1 generic real 2 2\n1,2\n", "Expected 2 rows"),
    ("hxdft-signal v1 generic real 1 2\n1,x\n", "non-numeric"),
    ("hxdft-signal v1 octonion real 1 2\n1,2\n", "octonion"),
    ("hxdft-signal v1 quaternion real 2 2\n1,2\n3,4\n", "components"),
    ("hxdft-signal v1 generic real 2 2 2\n1,2,3,4\n", "Expected 4 rows"),
    ("hxdft-signal v1 generic real 2 1 2\n1,2,3\n5,6,7,8\n", "expected 4 values"),
])
def test_malformed_signals(text, message):
    with pytest.raises(SignalFormatError, match=message):
        formats.parse_signal(text)


def test_root_round_trip(tmp_path, catalog):
    for name, root in catalog.items():
        path = tmp_path / f"{name}.json"
        formats.write_root(path, root)
        loaded = formats.read_root(path)
        np.testing.assert_array_equal(loaded.entries, root.entries)


def test_root_file_standard_complex(tmp_path):
    path = tmp_path / "j.json"
    path.write_text('{"kind": "matrix", "entries": [[0, -1], [1, 0]]}')
    root = formats.read_root(path)
    np.testing.assert_array_equal(root.entries, [[0, -1], [1, 0]])


def test_root_file_identity_rejected(tmp_path):
    path = tmp_path / "identity.json"
    path.write_text('{"kind": "matrix", "entries": [[1, 0], [0, 1]]}')
    with pytest.raises(RootValidationError, match="not a root of -1"):
        formats.read_root(path)


def test_root_file_not_json():
    with pytest.raises(SignalFormatError):
        formats.parse_root("[[0, -1], [1, 0]")
    with pytest.raises(SignalFormatError):
        formats.parse_root("[1, 2]")
