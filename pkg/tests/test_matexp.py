import math

import numpy as np
import pytest
from scipy.linalg import expm

from hxdft.core.errors import ConvergenceError, DimensionMismatchError
from hxdft.core.matexp import euler_exp, exponential_table, series_exp
from hxdft.core.roots import quaternion_root, root2x2_bc

CATALOG = ["complex", "quaternion", "biquaternion", "cl11", "cl20", "param-ab", "param-ac", "param-bc"]


@pytest.mark.parametrize("name", CATALOG)
def test_euler_matches_series(catalog, rng, name):
    root = catalog[name]
    for theta in rng.uniform(-4 * np.pi, 4 * np.pi, 100):
        closed = euler_exp(root, theta).entries
        np.testing.assert_allclose(closed, series_exp(root.entries * theta), rtol=0, atol=1e-12)


@pytest.mark.parametrize("name", ["quaternion", "cl20", "param-bc"])
def test_euler_matches_expm(catalog, name):
    root = catalog[name]
    for theta in (0.3, -2.0, 7.5):
        np.testing.assert_allclose(euler_exp(root, theta).entries, expm(root.entries * theta), atol=1e-12)


def test_special_angles(catalog):
    root = catalog["quaternion"]
    np.testing.assert_allclose(euler_exp(root, 0.0).entries, np.eye(4), atol=0)
    np.testing.assert_allclose(euler_exp(root, math.pi / 2).entries, root.entries, atol=1e-15)
    np.testing.assert_allclose(euler_exp(root, math.pi).entries, -np.eye(4), atol=1e-15)


def test_bc_family_structure():
    b, c = 1.0, -2.0
    root = root2x2_bc(b, c)
    kappa = math.sqrt(-1 - b * c)
    theta = 0.7
    cos, sin = math.cos(theta), math.sin(theta)
    expected = [[cos + kappa * sin, b * sin], [c * sin, cos - kappa * sin]]
    np.testing.assert_allclose(euler_exp(root, theta).entries, expected, atol=1e-15)


def test_phasor_inverse_and_compose(catalog):
    root = catalog["cl11"]
    a = euler_exp(root, 0.4)
    b = euler_exp(root, 1.1)
    np.testing.assert_allclose(a.entries @ a.inverse().entries, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(a.compose(b).entries, a.entries @ b.entries, atol=1e-12)
    with pytest.raises(DimensionMismatchError):
        a.compose(euler_exp(catalog["cl20"], 0.1))


def test_exponentials_of_different_roots_do_not_commute():
    j = quaternion_root(1.0, 0.0, 0.0)
    k = quaternion_root(0.0, 1.0, 0.0)
    ej, ek = euler_exp(j, 0.5).entries, euler_exp(k, 0.5).entries
    assert np.max(np.abs(ej @ ek - ek @ ej)) > 1e-3


def test_exponential_table(catalog):
    root = catalog["quaternion"]
    table = exponential_table(root, 8)
    assert table.shape == (8, 4, 4)
    for r in range(8):
        np.testing.assert_allclose(table[r], euler_exp(root, -2 * np.pi * r / 8).entries, atol=1e-15)


def test_series_on_general_matrix(rng):
    a = rng.standard_normal((3, 3))
    np.testing.assert_allclose(series_exp(a), expm(a), rtol=1e-12, atol=1e-12)
    np.testing.assert_array_equal(series_exp(np.zeros((2, 2))), np.eye(2))


def test_series_errors():
    with pytest.raises(ConvergenceError):
        series_exp(np.eye(2) * 50.0, max_terms=10)
    with pytest.raises(DimensionMismatchError):
        series_exp(np.zeros((2, 3)))


@pytest.mark.parametrize("name", CATALOG)
def test_euler_is_periodic(catalog, rng, name):
    root = catalog[name]
    for theta in rng.uniform(-4 * np.pi, 4 * np.pi, 20):
        np.testing.assert_allclose(euler_exp(root, theta + 2 * np.pi).entries, euler_exp(root, theta).entries,
                                   rtol=0, atol=1e-12)


@pytest.mark.parametrize("sign", [-1, 1])
def test_exponential_table_quarter_turns_are_exact(catalog, sign):
    root = catalog["cl20"]
    table = exponential_table(root, 12, sign=sign)
    np.testing.assert_array_equal(table[0], np.eye(4))
    np.testing.assert_array_equal(table[3], sign * root.entries)
    np.testing.assert_array_equal(table[6], -np.eye(4))
    np.testing.assert_array_equal(table[9], -sign * root.entries)
