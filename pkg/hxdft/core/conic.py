"""
hxdft - Conic fitting

Algebraic least-squares fit of A x^2 + B xy + C y^2 + D x + E y + F = 0 to
the points traced by a phasor path.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, solve, svd

from hxdft.core.errors import DegeneratePathError
from hxdft.core.utils import max_norm

logger = logging.getLogger(__name__)

COEFFICIENT_NAMES = ("A", "B", "C", "D", "E", "F")


@dataclass(frozen=True)
class ConicFit:
    """Fitted conic and its algebraic residual over the fitted points"""
    coefficients: np.ndarray
    residual: float

    @property
    def discriminant(self) -> float:
        a, b, c = self.coefficients[:3]
        return float(b * b - 4.0 * a * c)

    @property
    def is_ellipse(self) -> bool:
        return self.discriminant < 0

    @property
    def center(self) -> np.ndarray:
        """Point where the conic's gradient vanishes"""
        a, b, c, d, e, _ = self.coefficients
        try:
            return solve(np.array([[2 * a, b], [b, 2 * c]]), np.array([-d, -e]))
        except LinAlgError as e:
            raise DegeneratePathError("Conic has no unique center") from e

    def to_dict(self) -> dict:
        return {
            **{name: float(v) for name, v in zip(COEFFICIENT_NAMES, self.coefficients)},
            "residual": self.residual,
            "discriminant": self.discriminant,
        }

    def __str__(self) -> str:
        terms = " ".join(f"{name}={v:.12g}" for name, v in zip(COEFFICIENT_NAMES, self.coefficients))
        return f"{terms} residual={self.residual:.3e}"


def design_matrix(points: np.ndarray) -> np.ndarray:
    x, y = points[:, 0], points[:, 1]
    return np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])


def fit_conic(points) -> ConicFit:
    """
    Fit one conic through a set of 2D points.

    The coefficient vector is the right singular vector of the design
    matrix with the smallest singular value, scaled so that F = -1, or so
    that the largest coefficient is +1 when the conic passes through the
    origin.

    Args:
        points: (K, 2) array of real points

    Returns:
        ConicFit

    Raises:
        DegeneratePathError: the points do not spread out (e.g. all at one spot)
    """
    points = np.asarray(points)
    if np.iscomplexobj(points):
        if np.any(points.imag):
            raise DegeneratePathError("Conic fitting needs real points")
        points = points.real
    points = points.astype(float)
    if points.ndim != 2 or points.shape[1] != 2 or points.shape[0] < 3:
        raise DegeneratePathError(f"Conic fitting needs at least 3 points in the plane, got shape {points.shape}")

    spread = max_norm(points - points.mean(axis=0))
    if spread <= 1e-12 * (1.0 + max_norm(points)):
        raise DegeneratePathError("degenerate path: all points coincide")

    design = design_matrix(points)
    _, _, vh = svd(design, full_matrices=True)
    coefficients = vh[-1].copy()

    scale = max_norm(coefficients)
    if abs(coefficients[5]) > 1e-8 * scale:
        coefficients = -coefficients / coefficients[5]
    else:
        coefficients = coefficients / coefficients[np.argmax(np.abs(coefficients))]

    residual = max_norm(design @ coefficients)
    fit = ConicFit(coefficients, residual)
    logger.debug(f"Conic fit over {len(points)} points: {fit}")
    return fit
