"""
hxdft - Matrix exponentials of roots of minus one

Since J @ J == -I, the exponential collapses to exp(J theta) = I cos(theta)
+ J sin(theta). The power series is kept only as an independent oracle.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from hxdft.core.config import get_config
from hxdft.core.errors import ConvergenceError, DimensionMismatchError
from hxdft.core.roots import MatrixRoot
from hxdft.core.utils import CompensatedSum, max_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PhasorMatrix:
    """exp(J theta) for a validated root J"""
    entries: np.ndarray
    theta: float
    source_root: MatrixRoot

    def __post_init__(self):
        self.entries.flags.writeable = False

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def inverse(self) -> "PhasorMatrix":
        """exp(-J theta)"""
        return euler_exp(self.source_root, -self.theta)

    def compose(self, other: "PhasorMatrix") -> "PhasorMatrix":
        """Product of two exponentials of the same root; the angles add"""
        if other.source_root is not self.source_root and not other.source_root.isclose(self.source_root):
            raise DimensionMismatchError("Only exponentials of the same root combine into one exponential")
        return euler_exp(self.source_root, self.theta + other.theta)


def euler_exp(root: MatrixRoot, theta: float) -> PhasorMatrix:
    """
    Closed-form matrix exponential of a root of minus one.

    Args:
        root: Validated root J
        theta: Angle in radians

    Returns:
        PhasorMatrix holding I cos(theta) + J sin(theta)
    """
    entries = np.eye(root.n) * math.cos(theta) + root.entries * math.sin(theta)
    return PhasorMatrix(entries, float(theta), root)


_QUARTER_COS = np.array([1.0, 0.0, -1.0, 0.0])
_QUARTER_SIN = np.array([0.0, 1.0, 0.0, -1.0])


def exponential_table(root: MatrixRoot, length: int, sign: int = -1) -> np.ndarray:
    """
    The `length` matrices exp(sign * J * 2 pi r / length), r = 0..length-1.

    Any exponent 2 pi m u / M reduces to one of these through (m * u) mod M.
    Quarter turns (4 r divisible by length) get exact cosines and sines.

    Returns:
        (length, n, n) array
    """
    r = np.arange(length)
    theta = sign * 2.0 * np.pi * r / length
    cos, sin = np.cos(theta), np.sin(theta)
    quarter = (4 * r) % length == 0
    turns = (4 * r[quarter]) // length
    cos[quarter] = _QUARTER_COS[turns % 4]
    sin[quarter] = sign * _QUARTER_SIN[turns % 4]
    eye = np.eye(root.n)
    table = cos[:, None, None] * eye + sin[:, None, None] * root.entries
    logger.debug(f"Exponential table: {length} matrices of size {root.n}x{root.n}")
    return table


def _extended_dtype(a: np.ndarray) -> np.dtype:
    if np.iscomplexobj(a):
        return np.dtype(np.clongdouble)
    return np.dtype(np.longdouble)


def series_exp(a, tol: float | None = None, max_terms: int | None = None) -> np.ndarray:
    """
    Matrix exponential by its power series, for cross-checking euler_exp.

    Terms A^k / k! are generated in ascending k and accumulated with
    compensated summation in extended precision where the platform has it,
    until the max-norm of a term drops below `tol`.

    Args:
        a: Square matrix (e.g. J * theta)
        tol: Stopping bound on the term max-norm (default from config)
        max_terms: Term cap (default from config)

    Returns:
        exp(a) as a float64 / complex128 array

    Raises:
        ConvergenceError: the cap was reached first
    """
    config = get_config()
    tol = config.series_tol if tol is None else tol
    max_terms = config.series_max_terms if max_terms is None else max_terms

    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"series_exp needs a square matrix, got shape {a.shape}")
    out_dtype = np.complex128 if np.iscomplexobj(a) else np.float64

    work = a.astype(_extended_dtype(a))
    term = np.eye(a.shape[0], dtype=work.dtype)
    total = CompensatedSum(a.shape, work.dtype)
    total.add(term)

    for k in range(1, max_terms):
        term = (term @ work) / k
        total.add(term)
        if max_norm(term) < tol:
            logger.debug(f"Series converged after {k + 1} terms")
            return total.result().astype(out_dtype)

    raise ConvergenceError(f"Power series did not converge within {max_terms} terms (input max-norm {max_norm(a):.3g})")
