import numpy as np
import pytest

from hxdft.core.conic import fit_conic
from hxdft.core.errors import DegeneratePathError


def ellipse_points(a, b, angle, center, count=40):
    t = np.linspace(0, 2 * np.pi, count, endpoint=False)
    x, y = a * np.cos(t), b * np.sin(t)
    c, s = np.cos(angle), np.sin(angle)
    return np.column_stack([c * x - s * y + center[0], s * x + c * y + center[1]])


def test_axis_aligned_ellipse():
    fit = fit_conic(ellipse_points(2.0, 1.0, 0.0, (0.0, 0.0)))
    # x^2 / 4 + y^2 - 1 = 0
    np.testing.assert_allclose(fit.coefficients, [0.25, 0, 1, 0, 0, -1], atol=1e-12)
    assert fit.residual < 1e-12
    assert fit.discriminant == pytest.approx(-1.0)
    assert fit.is_ellipse


def test_rotated_shifted_ellipse_center():
    fit = fit_conic(ellipse_points(3.0, 0.5, 0.7, (1.0, -2.0)))
    assert fit.is_ellipse
    np.testing.assert_allclose(fit.center, [1.0, -2.0], atol=1e-9)


def test_hyperbola_is_not_ellipse():
    t = np.linspace(-2, 2, 30)
    points = np.column_stack([np.cosh(t), np.sinh(t)])
    fit = fit_conic(points)
    assert fit.residual < 1e-9
    assert fit.discriminant > 0
    assert not fit.is_ellipse


def test_conic_through_origin_normalized_by_largest():
    # circle (x - 1)^2 + y^2 = 1 passes through the origin, so F = 0
    fit = fit_conic(ellipse_points(1.0, 1.0, 0.0, (1.0, 0.0)))
    assert np.max(np.abs(fit.coefficients)) == pytest.approx(1.0)
    assert abs(fit.coefficients[5]) < 1e-10


def test_degenerate_points():
    with pytest.raises(DegeneratePathError, match="degenerate path"):
        fit_conic(np.ones((10, 2)))
    with pytest.raises(DegeneratePathError):
        fit_conic(np.zeros((2, 2)))


def test_to_dict():
    d = fit_conic(ellipse_points(1.0, 1.0, 0.0, (0.0, 0.0))).to_dict()
    assert set(d) == {"A", "B", "C", "D", "E", "F", "residual", "discriminant"}
    assert d["F"] == -1.0
