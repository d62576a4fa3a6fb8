#!/usr/bin/env python

"""
hxdft - Matrix roots of minus one

Validation and construction of matrices J with J @ J == -I, the seeds of
every transform kernel in this package.
"""

import logging
import math
from dataclasses import dataclass, field as dataclass_field, replace
from enum import Enum
from typing import Any, Dict

import numpy as np
from scipy.optimize import minimize

from hxdft.core.algebra import AlgebraSpec, AlgebraTag, GroundField, HValue, from_matrix, make_algebra, multiply, to_matrix
from hxdft.core.config import get_config
from hxdft.core.errors import ConstraintViolationError, DimensionMismatchError, RootValidationError, SignalFormatError
from hxdft.core.utils import is_real_valued, max_norm

logger = logging.getLogger(__name__)


class ProvenanceKind(Enum):
    """Where a root came from"""
    ALGEBRA_EMBEDDING = "algebra"
    PARAMETRIC_2X2 = "parametric"
    USER_SUPPLIED = "user"


@dataclass(frozen=True)
class Provenance:
    kind: ProvenanceKind
    algebra: AlgebraTag | None = None
    transmuted: bool = False

    @classmethod
    def embedding(cls, tag: AlgebraTag) -> "Provenance":
        return cls(ProvenanceKind.ALGEBRA_EMBEDDING, tag)

    @classmethod
    def parametric(cls) -> "Provenance":
        return cls(ProvenanceKind.PARAMETRIC_2X2)

    @classmethod
    def user(cls) -> "Provenance":
        return cls(ProvenanceKind.USER_SUPPLIED)

    def __str__(self) -> str:
        if self.kind is ProvenanceKind.ALGEBRA_EMBEDDING:
            suffix = ", transmuted" if self.transmuted else ""
            return f"{self.algebra.value} embedding{suffix}"
        return self.kind.value


class RejectionReason(Enum):
    ODD_DIMENSION = "odd_dimension"
    RESIDUAL = "residual"
    NON_FINITE = "non_finite"


@dataclass(frozen=True)
class RootRejection:
    """Report explaining why a matrix is not a root of minus one"""
    n: int
    reason: RejectionReason
    message: str
    residual: float | None = None

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True, eq=False)
class MatrixRoot:
    """A validated n x n matrix J with J @ J == -I"""
    entries: np.ndarray
    provenance: Provenance = dataclass_field(default_factory=Provenance.user)
    residual: float = 0.0

    def __post_init__(self):
        entries = np.array(self.entries)
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def field(self) -> GroundField:
        return GroundField.of(self.entries)

    def negate(self) -> "MatrixRoot":
        """-J, also a root of minus one"""
        return replace(self, entries=-self.entries)

    def inverse(self) -> "MatrixRoot":
        """J^-1, which equals -J"""
        return self.negate()

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvals(self.entries)

    def eigenvectors(self) -> np.ndarray:
        return np.linalg.eig(self.entries)[1]

    def has_imaginary_unit_spectrum(self, tol: float = 1e-8) -> bool:
        """True when every eigenvalue is +i or -i"""
        eig = self.eigenvalues()
        return bool(np.all(np.minimum(np.abs(eig - 1j), np.abs(eig + 1j)) <= tol))

    def isclose(self, other: "MatrixRoot", tol: float = 1e-12) -> bool:
        return self.entries.shape == other.entries.shape and max_norm(self.entries - other.entries) <= tol

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the structured key-value root format"""
        result = {
            "kind": "matrix",
            "n": self.n,
            "field": self.field.value,
            "provenance": self.provenance.kind.value,
            "entries": _encode_entries(self.entries),
        }
        if self.provenance.algebra is not None:
            result["algebra"] = self.provenance.algebra.value
        if self.provenance.transmuted:
            result["transmuted"] = True
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any], tol: float | None = None) -> "MatrixRoot":
        """
        Create a root from the structured key-value format.

        Accepts either {"kind": "matrix", "entries": [[...]]} or
        {"algebra": "quaternion", "coeffs": [0, x, y, z]}; complex numbers are
        written as [re, im] pairs. The result is always validated, and a
        claimed algebra must match the entries.

        Raises:
            SignalFormatError: inconsistent provenance fields
            NotInImageError: entries are not the representation the data claims
            RootValidationError: entries are not a root of minus one
        """
        if "coeffs" in data and data.get("kind", "algebra") != "matrix":
            tag = AlgebraTag.parse(data["algebra"])
            coeffs = _decode_vector(data["coeffs"])
            return algebra_root(tag, coeffs, tol=tol)

        if "entries" not in data:
            raise SignalFormatError("Root data needs either 'entries' or 'algebra' with 'coeffs'")
        entries = _decode_matrix(data["entries"])
        kind = ProvenanceKind(data.get("provenance", ProvenanceKind.USER_SUPPLIED.value))
        algebra = AlgebraTag.parse(data["algebra"]) if data.get("algebra") else None
        provenance = Provenance(kind, algebra, bool(data.get("transmuted", False)))
        _check_claimed_algebra(entries, provenance)
        return ensure_root(entries, tol=tol, provenance=provenance)

    def __str__(self) -> str:
        return f"MatrixRoot({self.n}x{self.n}, {self.field.value}, {self.provenance}, residual={self.residual:.2e})"


def _check_claimed_algebra(entries: np.ndarray, provenance: Provenance) -> None:
    if provenance.kind is ProvenanceKind.ALGEBRA_EMBEDDING and provenance.algebra is None:
        raise SignalFormatError("Root data with algebra provenance must name the algebra")
    if provenance.algebra is None:
        if provenance.transmuted:
            raise SignalFormatError("Only quaternion roots can be transmuted")
        return
    if provenance.kind is not ProvenanceKind.ALGEBRA_EMBEDDING:
        raise SignalFormatError(f"Root data names algebra '{provenance.algebra.value}' without algebra provenance")
    if provenance.transmuted:
        if provenance.algebra is not AlgebraTag.QUATERNION:
            raise SignalFormatError("Only quaternion roots can be transmuted")
        entries = transmute_matrix(entries)
    # raises NotInImageError for a matrix that only claims the algebra
    from_matrix(entries, provenance.algebra)


def _encode_entries(values: np.ndarray):
    if np.iscomplexobj(values) and not is_real_valued(values):
        return [[[float(v.real), float(v.imag)] for v in row] for row in values]
    return np.real(values).astype(float).tolist()


def _decode_scalar(value) -> float | complex:
    if isinstance(value, (list, tuple)):
        # complex entries are [re, im] pairs
        if len(value) != 2:
            raise SignalFormatError(f"Complex entry must be an [re, im] pair, got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return float(value)


def _as_array(values: list) -> np.ndarray:
    flat = np.ravel(np.array(values, dtype=object))
    is_complex = any(isinstance(v, complex) for v in flat)
    return np.array(values, dtype=complex if is_complex else float)


def _decode_vector(values) -> np.ndarray:
    try:
        return _as_array([_decode_scalar(v) for v in values])
    except (TypeError, ValueError) as e:
        raise SignalFormatError(f"Non-numeric coefficients: {e}") from e


def _decode_matrix(rows) -> np.ndarray:
    try:
        decoded = [[_decode_scalar(v) for v in row] for row in rows]
    except (TypeError, ValueError) as e:
        raise SignalFormatError(f"Non-numeric matrix entries: {e}") from e
    if len({len(row) for row in decoded}) > 1:
        raise SignalFormatError("Matrix rows have different lengths")
    return _as_array(decoded)


def validate_root(m, tol: float | None = None, provenance: Provenance | None = None) -> "MatrixRoot | RootRejection":
    """
    Check whether m is a matrix root of minus one.

    Real matrices of odd dimension are rejected without squaring: a real J
    would need det(J)^2 = det(-I) = -1.

    Args:
        m: Square matrix
        tol: Acceptance bound on ||m @ m + I||_max (default from config)
        provenance: Recorded on the accepted root

    Returns:
        MatrixRoot when accepted, RootRejection otherwise (falsy)

    Raises:
        DimensionMismatchError: m is not square
    """
    tol = get_config().validation_tol if tol is None else tol
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"Root must be a square matrix, got shape {m.shape}")
    n = m.shape[0]

    if not np.all(np.isfinite(m)):
        return RootRejection(n, RejectionReason.NON_FINITE, "matrix has non-finite entries")

    if n % 2 == 1 and is_real_valued(m):
        return RootRejection(
            n, RejectionReason.ODD_DIMENSION,
            f"no real {n}x{n} root of -1 exists: |J|^2 = |-I| = -1 has no real solution for odd n",
        )

    if not np.iscomplexobj(m):
        m = m.astype(float)

    residual = max_norm(m @ m + np.eye(n))
    if residual > tol:
        logger.debug(f"Rejected {n}x{n} matrix, residual {residual:.3e} > {tol:.1e}")
        return RootRejection(
            n, RejectionReason.RESIDUAL,
            f"not a root of -1: ||J^2 + I||_max = {residual:.3e} exceeds {tol:.1e}",
            residual,
        )

    return MatrixRoot(m, provenance or Provenance.user(), residual)


def ensure_root(m, tol: float | None = None, provenance: Provenance | None = None) -> MatrixRoot:
    """validate_root that raises RootValidationError on rejection"""
    result = validate_root(m, tol=tol, provenance=provenance)
    if isinstance(result, RootRejection):
        raise RootValidationError(result)
    return result


def _constructor_tol(entries: np.ndarray) -> float:
    # absolute bound for unit-scale entries, relative beyond that
    return get_config().exact_validation_tol * (1.0 + max_norm(entries) ** 2)


def _check_constraint(name: str, value: float, tol: float | None = None) -> None:
    tol = get_config().constraint_tol if tol is None else tol
    if not abs(value) <= tol:
        raise ConstraintViolationError(f"{name}: constraint off by {value:.3e} (tolerance {tol:.1e})")


def algebra_root(tag: AlgebraTag | AlgebraSpec, coeffs, tol: float | None = None) -> MatrixRoot:
    """
    Embed an algebra element that squares to -1.

    Args:
        tag: Algebra
        coeffs: Coefficient vector of the element
        tol: Tolerance on q*q + 1 (default from config)

    Returns:
        MatrixRoot with algebra-embedding provenance
    """
    algebra = tag if isinstance(tag, AlgebraSpec) else make_algebra(tag)
    q = HValue(algebra, np.asarray(coeffs))
    tol = get_config().oracle_tol if tol is None else tol
    if not q.is_root_of_minus_one(tol):
        square = multiply(q, q)
        raise ConstraintViolationError(f"{q} is not a root of -1 in {algebra.tag.value} (square is {square})")
    entries = to_matrix(q)
    return ensure_root(entries, tol=_constructor_tol(entries), provenance=Provenance.embedding(algebra.tag))


def complex_root() -> MatrixRoot:
    """The standard complex root [[0, -1], [1, 0]]"""
    return algebra_root(AlgebraTag.COMPLEX, [0.0, 1.0])


def quaternion_root(x: float, y: float, z: float) -> MatrixRoot:
    """
    Antisymmetric 4x4 root for the unit pure quaternion xi + yj + zk.

    Raises:
        ConstraintViolationError: x^2 + y^2 + z^2 != 1
    """
    _check_constraint("quaternion root x^2+y^2+z^2=1", x * x + y * y + z * z - 1.0)
    algebra = make_algebra(AlgebraTag.QUATERNION)
    entries = to_matrix(HValue(algebra, np.array([0.0, x, y, z])))
    root = ensure_root(entries, tol=_constructor_tol(entries), provenance=Provenance.embedding(AlgebraTag.QUATERNION))
    logger.debug(f"Quaternion root ({x:.6g}, {y:.6g}, {z:.6g}), residual {root.residual:.2e}")
    return root


def biquaternion_root(q: HValue) -> MatrixRoot:
    """
    Complex 4x4 root for a biquaternion with q * q == -1.

    Raises:
        ConstraintViolationError: q does not square to -1
    """
    if q.algebra.tag is not AlgebraTag.BIQUATERNION:
        q = HValue(make_algebra(AlgebraTag.BIQUATERNION), q.coeffs.astype(complex))
    return algebra_root(q.algebra, q.coeffs)


def cl11_root(b1: float, b2: float, beta: float) -> MatrixRoot:
    """Root b1 e1 + b2 e2 + beta e12 in Cl(1,1), needs b1^2 - b2^2 + beta^2 = -1"""
    _check_constraint("Cl(1,1) root b1^2-b2^2+beta^2=-1", b1 * b1 - b2 * b2 + beta * beta + 1.0)
    return _clifford_root(AlgebraTag.CL11, b1, b2, beta)


def cl20_root(b1: float, b2: float, beta: float) -> MatrixRoot:
    """Root b1 e1 + b2 e2 + beta e12 in Cl(2,0), needs b1^2 + b2^2 - beta^2 = -1"""
    _check_constraint("Cl(2,0) root b1^2+b2^2-beta^2=-1", b1 * b1 + b2 * b2 - beta * beta + 1.0)
    return _clifford_root(AlgebraTag.CL20, b1, b2, beta)


def _clifford_root(tag: AlgebraTag, b1: float, b2: float, beta: float) -> MatrixRoot:
    entries = to_matrix(HValue(make_algebra(tag), np.array([0.0, b1, b2, beta])))
    return ensure_root(entries, tol=_constructor_tol(entries), provenance=Provenance.embedding(tag))


def root2x2_ab(a: float, b: float) -> MatrixRoot:
    """[[a, b], [-(1+a^2)/b, -a]], b != 0"""
    if b == 0:
        raise ConstraintViolationError("root2x2_ab needs b != 0")
    entries = np.array([[a, b], [-(1.0 + a * a) / b, -a]], dtype=float)
    return ensure_root(entries, tol=_constructor_tol(entries), provenance=Provenance.parametric())


def root2x2_ac(a: float, c: float) -> MatrixRoot:
    """[[a, -(1+a^2)/c], [c, -a]], c != 0"""
    if c == 0:
        raise ConstraintViolationError("root2x2_ac needs c != 0")
    entries = np.array([[a, -(1.0 + a * a) / c], [c, -a]], dtype=float)
    return ensure_root(entries, tol=_constructor_tol(entries), provenance=Provenance.parametric())


def root2x2_bc(b: float, c: float, sign: int = 1) -> MatrixRoot:
    """
    Cross-diagonal family [[s*kappa, b], [c, -s*kappa]], kappa = sqrt(-1 - bc).

    Args:
        b: Upper-right entry
        c: Lower-left entry, with b*c <= -1
        sign: +1 or -1, selects the sign of kappa on the diagonal
    """
    if sign not in (1, -1):
        raise ConstraintViolationError(f"root2x2_bc sign must be +1 or -1, got {sign}")
    if b * c > -1.0:
        raise ConstraintViolationError(f"root2x2_bc needs b*c <= -1, got {b * c:g}")
    kappa = math.sqrt(-1.0 - b * c)
    entries = np.array([[sign * kappa, b], [c, -sign * kappa]], dtype=float)
    return ensure_root(entries, tol=_constructor_tol(entries), provenance=Provenance.parametric())


# Entries (r, c), r != c, of the lower-right 3x3 block
_TRANSMUTE_MASK = np.array([
    [1, 1, 1, 1],
    [1, 1, -1, -1],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
])


def transmute_matrix(m) -> np.ndarray:
    """
    Negate the off-diagonal entries of the lower-right 3x3 block of a 4x4 matrix.

    Turns the left-multiplication matrix of a quaternion q into its
    right-multiplication matrix: transmute_matrix(to_matrix(q)) @ p == p * q.
    """
    m = np.asarray(m)
    if m.shape != (4, 4):
        raise DimensionMismatchError(f"Transmutation is defined for 4x4 matrices, got {m.shape}")
    return m * _TRANSMUTE_MASK


def transmute(root: MatrixRoot) -> MatrixRoot:
    """
    Transmute a quaternion-embedding root (an involution).

    Raises:
        DimensionMismatchError: root is not a 4x4 quaternion embedding
    """
    provenance = root.provenance
    if provenance.kind is not ProvenanceKind.ALGEBRA_EMBEDDING or provenance.algebra is not AlgebraTag.QUATERNION:
        raise DimensionMismatchError(f"Transmutation is only defined for quaternion roots, got {provenance}")
    return MatrixRoot(
        transmute_matrix(root.entries),
        replace(provenance, transmuted=not provenance.transmuted),
        root.residual,
    )


def builtin_roots() -> Dict[str, MatrixRoot]:
    """
    Built-in catalog of roots.

    Returns:
        dict: name -> MatrixRoot, one example per algebra plus the
        parametric 2x2 families
    """
    s3 = math.sqrt(3.0)
    biquaternion = HValue.from_coeffs(AlgebraTag.BIQUATERNION, [0, 1, 1 + 1j, 1 - 1j])
    return {
        "complex": complex_root(),
        "quaternion": quaternion_root(1 / s3, 1 / s3, 1 / s3),
        "biquaternion": biquaternion_root(biquaternion),
        "cl11": cl11_root(1.0, s3, 1.0),
        "cl20": cl20_root(1.0, 1.0, s3),
        "param-ab": root2x2_ab(2.0, 1.0),
        "param-ac": root2x2_ac(2.0, 1.0),
        "param-bc": root2x2_bc(1.0, -2.0, 1),
    }


def search_real_root_residual(n: int, restarts: int, rng: np.random.Generator) -> float:
    """
    Multi-start minimisation of ||J^2 + I||_F^2 over real n x n matrices.

    Args:
        n: Matrix dimension
        restarts: Number of random starting points
        rng: Random generator for the starts

    Returns:
        float: Smallest ||J^2 + I||_max reached over all restarts
    """
    eye = np.eye(n)

    def objective(flat):
        j = flat.reshape(n, n)
        r = j @ j + eye
        grad = 2.0 * (r @ j.T + j.T @ r)
        return float(np.sum(r * r)), grad.ravel()

    best = math.inf
    for _ in range(restarts):
        start = rng.standard_normal(n * n)
        result = minimize(objective, start, jac=True, method="BFGS", options={"maxiter": 200})
        j = result.x.reshape(n, n)
        best = min(best, max_norm(j @ j + eye))

    logger.debug(f"Residual search over real {n}x{n}: best {best:.4f} after {restarts} restarts")
    return best
