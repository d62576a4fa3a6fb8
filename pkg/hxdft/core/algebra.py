#!/usr/bin/env python

"""
hxdft - Algebras

The five supported algebras, their signed multiplication tables, hypercomplex
arithmetic used as the test oracle, and the matrix representations.

Every algebra here is generated by one or two basis vectors with prescribed
squares. Basis elements are indexed by bitmask: 0 is the identity, 1 and 2
are the generators and 3 is their product (the pseudoscalar). The quaternion
units i, j, k are generators 1, 2 and their product 3.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from hxdft.core.config import get_config
from hxdft.core.errors import AlgebraMismatchError, DimensionMismatchError, FieldMismatchError, NotInImageError
from hxdft.core.utils import is_real_valued, max_norm

logger = logging.getLogger(__name__)


class GroundField(Enum):
    """Field the coefficients and matrix entries live in"""
    REAL = "real"
    COMPLEX = "complex"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.complex128 if self is GroundField.COMPLEX else np.float64)

    def join(self, other: "GroundField") -> "GroundField":
        """Smallest field containing both (Real embeds in Complex)"""
        if GroundField.COMPLEX in (self, other):
            return GroundField.COMPLEX
        return GroundField.REAL

    @classmethod
    def of(cls, values) -> "GroundField":
        return cls.REAL if is_real_valued(values) else cls.COMPLEX


class AlgebraTag(Enum):
    """Supported algebras"""
    COMPLEX = "complex"
    QUATERNION = "quaternion"
    BIQUATERNION = "biquaternion"
    CL11 = "cl11"
    CL20 = "cl20"

    @classmethod
    def parse(cls, name: str) -> "AlgebraTag":
        try:
            return cls(name.lower())
        except ValueError:
            choices = ", ".join(tag.value for tag in cls)
            raise ValueError(f"Unknown algebra '{name}' (expected one of: {choices})") from None


# Squares of the generators, in generator order
_SIGNATURES: dict[AlgebraTag, tuple[int, ...]] = {
    AlgebraTag.COMPLEX: (-1,),
    AlgebraTag.QUATERNION: (-1, -1),
    AlgebraTag.BIQUATERNION: (-1, -1),
    AlgebraTag.CL11: (+1, -1),
    AlgebraTag.CL20: (+1, +1),
}

_BASIS_SYMBOLS: dict[AlgebraTag, tuple[str, ...]] = {
    AlgebraTag.COMPLEX: ("1", "j"),
    AlgebraTag.QUATERNION: ("1", "i", "j", "k"),
    AlgebraTag.BIQUATERNION: ("1", "i", "j", "k"),
    AlgebraTag.CL11: ("1", "e1", "e2", "e12"),
    AlgebraTag.CL20: ("1", "e1", "e2", "e12"),
}


@dataclass(frozen=True)
class AlgebraSpec:
    """
    An algebra's dimension, ground field and multiplication table.

    ``table[a][b] = (c, s)`` means basis_a * basis_b = s * basis_c.
    """
    tag: AlgebraTag
    dim: int
    field: GroundField
    signature: tuple[int, ...]
    table: tuple[tuple[tuple[int, int], ...], ...]
    symbols: tuple[str, ...]

    def product(self, a: int, b: int) -> tuple[int, int]:
        return self.table[a][b]

    def structure_tensor(self) -> np.ndarray:
        """Dense (dim, dim, dim) tensor T with basis_a * basis_b = sum_c T[a, b, c] basis_c"""
        tensor = np.zeros((self.dim, self.dim, self.dim))
        for a, row in enumerate(self.table):
            for b, (c, sign) in enumerate(row):
                tensor[a, b, c] = sign
        return tensor

    def __str__(self) -> str:
        return f"{self.tag.value} (dim {self.dim}, {self.field.value})"


def _blade_product(a: int, b: int, signature: tuple[int, ...]) -> tuple[int, int]:
    """Canonical-reordering product of two bitmask basis blades"""
    swaps = 0
    for x in range(len(signature)):
        if (a >> x) & 1:
            # generators of b with a lower index must pass generator x
            swaps += bin(b & ((1 << x) - 1)).count("1")
    sign = -1 if swaps % 2 else 1
    for x in range(len(signature)):
        if (a >> x) & 1 and (b >> x) & 1:
            sign *= signature[x]
    return a ^ b, sign


def _check_table(tag: AlgebraTag, table) -> None:
    dim = len(table)
    for k in range(dim):
        if table[0][k] != (k, 1) or table[k][0] != (k, 1):
            raise AssertionError(f"{tag.value}: basis 0 is not the identity")

    # associativity by enumeration of basis triples
    for a, b, c in itertools.product(range(dim), repeat=3):
        ab, s1 = table[a][b]
        left, s2 = table[ab][c]
        bc, s3 = table[b][c]
        right, s4 = table[a][bc]
        if left != right or s1 * s2 != s3 * s4:
            raise AssertionError(f"{tag.value}: table is not associative at ({a}, {b}, {c})")


def make_algebra(tag: AlgebraTag | str) -> AlgebraSpec:
    """
    Build the spec for one of the supported algebras.

    Args:
        tag: Which algebra

    Returns:
        AlgebraSpec with a fully populated, associativity-checked table
    """
    if not isinstance(tag, AlgebraTag):
        tag = AlgebraTag.parse(tag)
    return _build_algebra(tag)


@lru_cache(maxsize=None)
def _build_algebra(tag: AlgebraTag) -> AlgebraSpec:
    signature = _SIGNATURES[tag]
    dim = 2 ** len(signature)
    table = tuple(
        tuple(_blade_product(a, b, signature) for b in range(dim))
        for a in range(dim)
    )
    _check_table(tag, table)

    field = GroundField.COMPLEX if tag is AlgebraTag.BIQUATERNION else GroundField.REAL
    spec = AlgebraSpec(tag=tag, dim=dim, field=field, signature=signature,
                       table=table, symbols=_BASIS_SYMBOLS[tag])
    logger.debug(f"Built algebra {spec}")
    return spec


@dataclass(frozen=True, eq=False)
class HValue:
    """A hypercomplex number as a coefficient vector over its algebra's field"""
    algebra: AlgebraSpec
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex if np.iscomplexobj(self.coeffs) else float)
        if coeffs.shape != (self.algebra.dim,):
            raise DimensionMismatchError(
                f"{self.algebra.tag.value} needs {self.algebra.dim} coefficients, got shape {coeffs.shape}"
            )
        if self.algebra.field is GroundField.REAL:
            if not is_real_valued(coeffs):
                raise FieldMismatchError(f"{self.algebra.tag.value} coefficients must be real")
            coeffs = np.real(coeffs).astype(float)
        else:
            coeffs = coeffs.astype(complex)
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, algebra: AlgebraSpec | AlgebraTag, coeffs) -> "HValue":
        if not isinstance(algebra, AlgebraSpec):
            algebra = make_algebra(algebra)
        return cls(algebra, np.asarray(coeffs))

    @classmethod
    def one(cls, algebra: AlgebraSpec) -> "HValue":
        return cls.basis(algebra, 0)

    @classmethod
    def basis(cls, algebra: AlgebraSpec, index: int) -> "HValue":
        coeffs = np.zeros(algebra.dim)
        coeffs[index] = 1.0
        return cls(algebra, coeffs)

    def _check_same(self, other: "HValue") -> None:
        if other.algebra.tag is not self.algebra.tag:
            raise AlgebraMismatchError(
                f"Cannot combine {self.algebra.tag.value} with {other.algebra.tag.value}"
            )

    def __add__(self, other: "HValue") -> "HValue":
        self._check_same(other)
        return HValue(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other: "HValue") -> "HValue":
        self._check_same(other)
        return HValue(self.algebra, self.coeffs - other.coeffs)

    def __neg__(self) -> "HValue":
        return HValue(self.algebra, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, HValue):
            return multiply(self, other)
        return HValue(self.algebra, self.coeffs * other)

    def __rmul__(self, scalar):
        return HValue(self.algebra, self.coeffs * scalar)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def isclose(self, other: "HValue", tol: float = 1e-12) -> bool:
        self._check_same(other)
        return max_norm(self.coeffs - other.coeffs) <= tol

    def is_root_of_minus_one(self, tol: float | None = None) -> bool:
        tol = get_config().oracle_tol if tol is None else tol
        square = multiply(self, self)
        return square.isclose(-HValue.one(self.algebra), tol)

    def __str__(self) -> str:
        terms = []
        for c, symbol in zip(self.coeffs, self.algebra.symbols):
            if c == 0:
                continue
            text = f"{c:g}" if not isinstance(c, complex) else f"({c:g})"
            terms.append(text if symbol == "1" else f"{text}{symbol}")
        return " + ".join(terms) if terms else "0"


def multiply(a: HValue, b: HValue) -> HValue:
    """
    Bilinear product through the signed multiplication table.

    Args:
        a: Left factor
        b: Right factor (same algebra)

    Returns:
        a * b, non-commutative in general
    """
    a._check_same(b)
    algebra = a.algebra
    dtype = complex if np.iscomplexobj(a.coeffs) or np.iscomplexobj(b.coeffs) else float
    out = np.zeros(algebra.dim, dtype=dtype)
    for i, row in enumerate(algebra.table):
        if a.coeffs[i] == 0:
            continue
        for k, (c, sign) in enumerate(row):
            out[c] += sign * a.coeffs[i] * b.coeffs[k]
    return HValue(algebra, out)


def to_matrix(a: HValue) -> np.ndarray:
    """
    Left-multiplication matrix of an algebra element.

    Column k holds the coefficients of a * basis_k, so column 0 is a itself
    and to_matrix(a) @ to_matrix(b) == to_matrix(a * b). In the basis order
    used here this is the layout
    [[a, -b], [b, a]] for a + jb, the usual 4x4 real quaternion layout
    with w on the diagonal, and the Cl(1,1) / Cl(2,0) real layouts.

    Args:
        a: Algebra element

    Returns:
        (dim, dim) array, complex for biquaternions
    """
    algebra = a.algebra
    m = np.zeros((algebra.dim, algebra.dim), dtype=a.coeffs.dtype)
    for i, row in enumerate(algebra.table):
        for k, (c, sign) in enumerate(row):
            m[c, k] += sign * a.coeffs[i]
    return m


def from_matrix(m, algebra: AlgebraSpec | AlgebraTag, tol: float | None = None) -> HValue:
    """
    Inverse of to_matrix.

    Args:
        m: Square matrix of the algebra's dimension
        algebra: Target algebra
        tol: Re-embedding tolerance (default from config)

    Returns:
        HValue whose representation is m

    Raises:
        DimensionMismatchError: m has the wrong shape
        NotInImageError: m is not the representation of any element
    """
    if not isinstance(algebra, AlgebraSpec):
        algebra = make_algebra(algebra)
    tol = get_config().image_tol if tol is None else tol

    m = np.asarray(m)
    if m.shape != (algebra.dim, algebra.dim):
        raise DimensionMismatchError(
            f"{algebra.tag.value} matrices are {algebra.dim}x{algebra.dim}, got {m.shape}"
        )
    column = m[:, 0]
    if algebra.field is GroundField.REAL and not is_real_valued(column):
        raise NotInImageError(f"Complex first column cannot represent a {algebra.tag.value} value")
    value = HValue(algebra, column)
    residual = max_norm(to_matrix(value) - m)
    if residual > tol:
        raise NotInImageError(
            f"Matrix is not in the image of the {algebra.tag.value} representation "
            f"(re-embedding residual {residual:.3e})"
        )
    return value
