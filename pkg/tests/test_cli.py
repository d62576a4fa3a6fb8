import json
import math

import numpy as np
import pytest

from hxdft import cli
from hxdft.core import formats
from hxdft.core.algebra import AlgebraTag
from hxdft.core.dft import Signal1D, Signal2D, dft2d_two_sided
from hxdft.core.roots import quaternion_root, transmute


def run(capsys, *argv):
    status = cli.main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def write_root(tmp_path, name, *params):
    path = tmp_path / f"{name}.json"
    assert cli.main(["roots", name, *params, "-o", str(path)]) == 0
    return path


def test_roots_list(capsys):
    status, out, _ = run(capsys, "roots", "--list")
    assert status == 0
    for name in ("complex", "quaternion", "biquaternion", "cl11", "cl20", "param-ab", "param-ac", "param-bc"):
        assert f"# {name}:" in out


def test_roots_quaternion_snaps_printed_digits(capsys):
    status, out, _ = run(capsys, "roots", "quaternion", "0.577350269", "0.577350269", "0.577350269")
    assert status == 0
    entries = np.array(json.loads(out)["entries"])
    expected = np.array([[0, -1, -1, -1], [1, 0, -1, 1], [1, 1, 0, -1], [1, -1, 1, 0]]) / math.sqrt(3)
    np.testing.assert_allclose(entries, expected, atol=1e-12)


def test_roots_strict_rejects_printed_digits(capsys):
    status, _, err = run(capsys, "roots", "quaternion", "0.577350269", "0.577350269", "0.577350269", "--strict")
    assert status == 2
    assert "constraint" in err


def test_roots_cl20(capsys):
    status, out, _ = run(capsys, "roots", "cl20", "1", "1", "1.7320508")
    assert status == 0
    s3 = math.sqrt(3)
    expected = [[0, 1, 1, -s3], [1, 0, s3, -1], [1, -s3, 0, 1], [s3, -1, 1, 0]]
    np.testing.assert_allclose(json.loads(out)["entries"], expected, atol=1e-12)


def test_roots_param_bc(capsys):
    status, out, _ = run(capsys, "roots", "param-bc", "1", "-2", "+")
    assert status == 0
    assert json.loads(out)["entries"] == [[1.0, 1.0], [-2.0, -1.0]]


def test_roots_biquaternion_literals(capsys):
    status, out, _ = run(capsys, "roots", "biquaternion", "1", "1+1j", "1-1j")
    assert status == 0
    data = json.loads(out)
    assert data["field"] == "complex"
    assert data["entries"][2][0] == [1.0, 1.0]


def test_roots_constraint_violation(capsys):
    status, _, err = run(capsys, "roots", "cl11", "1", "1", "1")
    assert status == 2
    assert err.startswith("hxdft:")


def test_fwd_inv_round_trip(tmp_path, capsys, rng):
    root = write_root(tmp_path, "quaternion", "0.6", "0", "0.8")
    signal = Signal1D(rng.standard_normal((4, 12)), AlgebraTag.QUATERNION)
    source, spectrum, back = tmp_path / "f.csv", tmp_path / "F.csv", tmp_path / "g.csv"
    formats.write_signal(source, signal)

    assert cli.main(["fwd", str(source), str(root), "--scale", "unitary", "-o", str(spectrum)]) == 0
    assert cli.main(["inv", str(spectrum), str(root), "--scale", "unitary", "-o", str(back)]) == 0
    np.testing.assert_allclose(formats.read_signal(back).data, signal.data, rtol=0, atol=1e-10)


def test_fwd2d_roots_outside_signal_algebra(tmp_path, capsys, rng):
    ab = write_root(tmp_path, "param-ab", "2", "1")
    signal = Signal2D.from_coefficients(rng.standard_normal((5, 3, 2)), AlgebraTag.COMPLEX)
    source, spectrum, back = tmp_path / "f.csv", tmp_path / "F.csv", tmp_path / "g.csv"
    formats.write_signal(source, signal)

    status, _, err = run(capsys, "fwd2d", str(source), str(ab), str(ab), "-o", str(spectrum))
    assert status == 0, err
    assert spectrum.read_text().startswith("hxdft-signal v1 generic real 2 5 3")
    assert cli.main(["inv2d", str(spectrum), str(ab), str(ab), "-o", str(back)]) == 0
    np.testing.assert_allclose(formats.read_signal(back).data, signal.data, rtol=0, atol=1e-10)


def test_fwd2d_transmuted_right_root(tmp_path, capsys, rng):
    j_root = quaternion_root(0.6, 0.0, 0.8)
    j_path, k_path = tmp_path / "j.json", tmp_path / "k.json"
    formats.write_root(j_path, j_root)
    formats.write_root(k_path, transmute(j_root))
    signal = Signal2D.from_coefficients(rng.standard_normal((4, 4, 4)), AlgebraTag.QUATERNION)
    source, spectrum, back = tmp_path / "f.csv", tmp_path / "F.csv", tmp_path / "g.csv"
    formats.write_signal(source, signal)

    status, _, err = run(capsys, "fwd2d", str(source), str(j_path), str(k_path), "-o", str(spectrum))
    assert status == 0, err
    expected = dft2d_two_sided(signal, j_root, transmute(j_root))
    np.testing.assert_allclose(formats.read_signal(spectrum).data, expected.data, rtol=0, atol=1e-12)
    assert cli.main(["inv2d", str(spectrum), str(j_path), str(k_path), "-o", str(back)]) == 0
    np.testing.assert_allclose(formats.read_signal(back).data, signal.data, rtol=0, atol=1e-10)


def test_fwd_delta_forward_scale(tmp_path, capsys):
    root = write_root(tmp_path, "complex")
    data = np.zeros((2, 8))
    data[0, 0] = 1.0
    source = tmp_path / "delta.csv"
    formats.write_signal(source, Signal1D(data, AlgebraTag.COMPLEX))

    status, out, _ = run(capsys, "fwd", str(source), str(root), "--scale", "forward")
    assert status == 0
    spectrum = formats.parse_signal(out)
    np.testing.assert_allclose(spectrum.data[0], 1 / 8)
    np.testing.assert_allclose(spectrum.data[1], 0, atol=1e-16)


def test_fwd2d_inv2d_round_trip(tmp_path, capsys, rng):
    j_root = write_root(tmp_path, "quaternion", "0.577350269", "0.577350269", "0.577350269")
    k_path = tmp_path / "k.json"
    assert cli.main(["roots", "quaternion", "0.6", "0", "0.8", "-o", str(k_path)]) == 0
    signal = Signal2D.from_coefficients(rng.standard_normal((4, 6, 4)), AlgebraTag.QUATERNION)
    source, spectrum, back = tmp_path / "f.csv", tmp_path / "F.csv", tmp_path / "g.csv"
    formats.write_signal(source, signal)

    assert cli.main(["fwd2d", str(source), str(j_root), str(k_path), "-o", str(spectrum)]) == 0
    assert cli.main(["inv2d", str(spectrum), str(j_root), str(k_path), "-o", str(back)]) == 0
    np.testing.assert_allclose(formats.read_signal(back).data, signal.data, rtol=0, atol=1e-10)


def test_fwd_dimension_mismatch(tmp_path, capsys, rng):
    root = write_root(tmp_path, "complex")
    source = tmp_path / "f.csv"
    formats.write_signal(source, Signal1D(rng.standard_normal((4, 4))))
    status, _, err = run(capsys, "fwd", str(source), str(root))
    assert status == 2
    assert "dimension" in err


def test_identity_root_file_rejected(tmp_path, capsys, rng):
    root = tmp_path / "identity.json"
    root.write_text('{"kind": "matrix", "entries": [[1, 0], [0, 1]]}')
    source = tmp_path / "f.csv"
    formats.write_signal(source, Signal1D(rng.standard_normal((2, 4))))
    status, _, err = run(capsys, "fwd", str(source), str(root))
    assert status == 2
    assert "not a root of -1" in err


def test_missing_file(tmp_path, capsys):
    status, _, err = run(capsys, "fwd", str(tmp_path / "nope.csv"), str(tmp_path / "nope.json"))
    assert status == 2
    assert err.startswith("hxdft:")


def test_ellipse_complex_root(tmp_path, capsys):
    root = write_root(tmp_path, "complex")
    status, out, _ = run(capsys, "ellipse", str(root), "--m", "32")
    assert status == 0
    lines = out.splitlines()
    conic = dict(item.split("=") for item in lines[0].removeprefix("# conic ").split())
    np.testing.assert_allclose([float(conic[k]) for k in "ABCDEF"], [1, 0, 1, 0, 0, -1], atol=1e-12)
    assert float(lines[1].split()[-1]) < 1e-12
    assert lines[3] == "x,y"
    assert len(lines) == 4 + 32


def test_ellipse_bc_root(tmp_path, capsys):
    root = write_root(tmp_path, "param-bc", "1", "-2", "+")
    status, out, _ = run(capsys, "ellipse", str(root), "--m", "64", "--u0", "1", "--coeff", "1,0")
    assert status == 0
    lines = out.splitlines()
    assert float(lines[1].split()[-1]) < 1e-9
    assert float(lines[2].split()[-1]) < 0


def test_ellipse_errors(tmp_path, capsys):
    root = write_root(tmp_path, "complex")
    status, _, err = run(capsys, "ellipse", str(root), "--coeff", "0,0")
    assert status == 2
    assert "degenerate path" in err

    mu = write_root(tmp_path, "quaternion", "1", "0", "0")
    status, _, err = run(capsys, "ellipse", str(mu))
    assert status == 2
    assert "2x2" in err


def test_verify_single_group(capsys):
    status, out, _ = run(capsys, "--profile", "desk", "verify", "--algebra", "cl11", "--seed", "3")
    assert status == 0
    props = [line for line in out.splitlines() if line.startswith("PROP ")]
    assert props
    assert all(line.split()[1].startswith("cl11.") and line.split()[2] == "PASS" for line in props)


@pytest.mark.slow
def test_verify_all(capsys):
    status, out, _ = run(capsys, "--profile", "desk", "verify", "--all")
    assert status == 0
    assert " FAIL " not in out


def test_bench(capsys):
    status, out, _ = run(capsys, "bench", "--algebra", "complex", "--sizes", "1,16", "--repeat", "1")
    assert status == 0
    rows = out.splitlines()[1:]
    assert [row.split()[1] for row in rows] == ["1", "16"]
