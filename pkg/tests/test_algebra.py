import numpy as np
import pytest

from hxdft.core.algebra import (AlgebraTag, GroundField, HValue, from_matrix, make_algebra, multiply,
                                to_matrix)
from hxdft.core.errors import AlgebraMismatchError, DimensionMismatchError, FieldMismatchError, NotInImageError


def random_value(rng, tag):
    spec = make_algebra(tag)
    coeffs = rng.standard_normal(spec.dim)
    if spec.field is GroundField.COMPLEX:
        coeffs = coeffs + 1j * rng.standard_normal(spec.dim)
    return HValue(spec, coeffs)


def test_quaternion_units():
    q = make_algebra(AlgebraTag.QUATERNION)
    one, i, j, k = (HValue.basis(q, n) for n in range(4))

    assert (i * j).isclose(k)
    assert (j * i).isclose(-k)
    assert (j * k).isclose(i)
    assert (k * i).isclose(j)
    for unit in (i, j, k):
        assert (unit * unit).isclose(-one)
    assert (i * j * k).isclose(-one)


@pytest.mark.parametrize("tag, squares", [
    (AlgebraTag.COMPLEX, (-1,)),
    (AlgebraTag.CL11, (1, -1, 1)),
    (AlgebraTag.CL20, (1, 1, -1)),
])
def test_basis_squares(tag, squares):
    spec = make_algebra(tag)
    for index, square in enumerate(squares, start=1):
        assert spec.product(index, index) == (0, square)


def test_make_algebra_accepts_names():
    assert make_algebra("cl20") is make_algebra(AlgebraTag.CL20)
    assert make_algebra("CL20") is make_algebra("cl20")
    assert make_algebra(AlgebraTag.CL20) is make_algebra("Cl20")
    assert make_algebra("biquaternion").field is GroundField.COMPLEX
    with pytest.raises(ValueError, match="expected one of"):
        AlgebraTag.parse("octonion")


def test_complex_layout():
    value = HValue.from_coeffs(AlgebraTag.COMPLEX, [2.0, 3.0])
    np.testing.assert_array_equal(to_matrix(value), [[2.0, -3.0], [3.0, 2.0]])


def test_quaternion_layout():
    w, x, y, z = 1.0, 2.0, 3.0, 4.0
    value = HValue.from_coeffs(AlgebraTag.QUATERNION, [w, x, y, z])
    expected = [
        [w, -x, -y, -z],
        [x, w, -z, y],
        [y, z, w, -x],
        [z, -y, x, w],
    ]
    np.testing.assert_array_equal(to_matrix(value), expected)


@pytest.mark.parametrize("tag", list(AlgebraTag))
def test_homomorphism(rng, tag):
    for _ in range(200):
        a, b = random_value(rng, tag), random_value(rng, tag)
        product = to_matrix(a) @ to_matrix(b)
        assert np.max(np.abs(product - to_matrix(multiply(a, b)))) <= 1e-12


@pytest.mark.parametrize("tag", list(AlgebraTag))
def test_associativity(rng, tag):
    a, b, c = (random_value(rng, tag) for _ in range(3))
    assert ((a * b) * c).isclose(a * (b * c), tol=1e-12)


@pytest.mark.parametrize("tag", list(AlgebraTag))
def test_from_matrix_inverts_to_matrix(rng, tag):
    value = random_value(rng, tag)
    assert from_matrix(to_matrix(value), tag).isclose(value)


def test_from_matrix_rejects_non_image(rng):
    with pytest.raises(NotInImageError):
        from_matrix(rng.standard_normal((4, 4)), AlgebraTag.QUATERNION)
    with pytest.raises(NotInImageError):
        from_matrix(np.eye(4) * 1j, AlgebraTag.CL11)
    with pytest.raises(DimensionMismatchError):
        from_matrix(np.eye(2), AlgebraTag.QUATERNION)


def test_hvalue_validation():
    with pytest.raises(DimensionMismatchError):
        HValue.from_coeffs(AlgebraTag.QUATERNION, [1.0, 2.0])
    with pytest.raises(FieldMismatchError):
        HValue.from_coeffs(AlgebraTag.CL20, [1j, 0, 0, 0])
    with pytest.raises(AlgebraMismatchError):
        HValue.from_coeffs(AlgebraTag.CL11, [1, 0, 0, 0]) * HValue.from_coeffs(AlgebraTag.CL20, [1, 0, 0, 0])


def test_hvalue_is_immutable():
    value = HValue.from_coeffs(AlgebraTag.QUATERNION, [0, 1, 0, 0])
    with pytest.raises(ValueError):
        value.coeffs[0] = 5.0


def test_biquaternion_root_element():
    q = HValue.from_coeffs(AlgebraTag.BIQUATERNION, [0, 1, 1 + 1j, 1 - 1j])
    assert q.is_root_of_minus_one()
    assert not HValue.from_coeffs(AlgebraTag.BIQUATERNION, [0, 1, 1, 0]).is_root_of_minus_one()
