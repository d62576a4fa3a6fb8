#!/usr/bin/env python

"""
hxdft - Discrete Fourier transforms

One-sided 1D and two-sided 2D transforms driven by a matrix root of minus
one, the direct double-loop references used as oracles, the classic complex
DFT and the phasor-path generator for 2x2 roots.

Signal layouts:
    Signal1D.data   (n, M): one sample per column
    Signal2D.data   (M, N, a, a): one a x a matrix per sample
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import expm

from hxdft.core.algebra import AlgebraSpec, AlgebraTag, GroundField, HValue, make_algebra
from hxdft.core.config import get_config
from hxdft.core.errors import DimensionMismatchError, FieldMismatchError, HxdftError, NotInImageError
from hxdft.core.matexp import euler_exp, exponential_table
from hxdft.core.roots import MatrixRoot, transmute
from hxdft.core.utils import CompensatedSum, chunk_indices, is_real_valued, max_norm, ordered_matmul, ordered_matvec

logger = logging.getLogger(__name__)


class Direction(Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


class ScaleConvention(Enum):
    """Placement of the scale factors S (forward) and T (inverse), S * T = 1/M"""
    FORWARD_SCALED = "forward"
    INVERSE_SCALED = "inverse"
    UNITARY = "unitary"

    def factors(self, length: int) -> tuple[float, float]:
        """
        Scale factors for a transform over `length` samples (M, or M*N in 2D).

        Returns:
            tuple: (S, T)
        """
        if self is ScaleConvention.FORWARD_SCALED:
            return 1.0 / length, 1.0
        if self is ScaleConvention.INVERSE_SCALED:
            return 1.0, 1.0 / length
        root = 1.0 / math.sqrt(length)
        return root, root

    def factor(self, direction: Direction, length: int) -> float:
        s, t = self.factors(length)
        return s if direction is Direction.FORWARD else t


def _storage(data) -> np.ndarray:
    data = np.array(data)
    if np.iscomplexobj(data):
        return data.astype(np.complex128)
    return data.astype(np.float64)


def _complexified(algebra: AlgebraTag | None, data: np.ndarray) -> AlgebraTag | None:
    # a quaternion signal with complex samples is a biquaternion signal
    if algebra is AlgebraTag.QUATERNION and not is_real_valued(data):
        return AlgebraTag.BIQUATERNION
    return algebra


@dataclass(frozen=True, eq=False)
class Signal1D:
    """Sampled signal, one n-vector per column"""
    data: np.ndarray
    algebra: AlgebraTag | None = None

    def __post_init__(self):
        data = _storage(self.data)
        if data.ndim != 2:
            raise DimensionMismatchError(f"Signal1D data must be n x M, got shape {data.shape}")
        if data.shape[1] < 1:
            raise DimensionMismatchError("Signal1D needs at least one sample")
        if self.algebra is not None and make_algebra(self.algebra).dim != data.shape[0]:
            raise DimensionMismatchError(
                f"{self.algebra.value} samples have {make_algebra(self.algebra).dim} components, got {data.shape[0]}"
            )
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def m_len(self) -> int:
        return self.data.shape[1]

    @property
    def field(self) -> GroundField:
        return GroundField.COMPLEX if np.iscomplexobj(self.data) else GroundField.REAL

    @classmethod
    def from_hvalues(cls, values: list[HValue]) -> "Signal1D":
        if not values:
            raise DimensionMismatchError("Signal1D needs at least one sample")
        algebra = values[0].algebra
        for v in values:
            v._check_same(values[0])
        return cls(np.stack([v.coeffs for v in values], axis=1), algebra.tag)

    def to_hvalues(self, algebra: AlgebraSpec | AlgebraTag | None = None) -> list[HValue]:
        algebra = algebra or self.algebra
        if algebra is None:
            raise DimensionMismatchError("Signal has no algebra; pass one explicitly")
        if not isinstance(algebra, AlgebraSpec):
            algebra = make_algebra(algebra)
        return [HValue(algebra, self.data[:, m]) for m in range(self.m_len)]

    @classmethod
    def from_complex(cls, x) -> "Signal1D":
        """Embed a complex vector as (re, im) rows"""
        x = np.asarray(x, dtype=complex)
        return cls(np.vstack([x.real, x.imag]), AlgebraTag.COMPLEX)

    def to_complex(self) -> np.ndarray:
        if self.n != 2 or self.field is GroundField.COMPLEX:
            raise FieldMismatchError("Only real 2-row signals map back to complex vectors")
        return self.data[0] + 1j * self.data[1]

    def promoted(self) -> "Signal1D":
        """Same samples in complex storage"""
        return Signal1D(self.data.astype(np.complex128), self.algebra)


@dataclass(frozen=True, eq=False)
class Signal2D:
    """Sampled 2D signal, one a x a matrix per sample"""
    data: np.ndarray
    algebra: AlgebraTag | None = None

    def __post_init__(self):
        data = _storage(self.data)
        if data.ndim != 4 or data.shape[2] != data.shape[3]:
            raise DimensionMismatchError(f"Signal2D data must be M x N x a x a, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise DimensionMismatchError("Signal2D needs at least one sample in each direction")
        if self.algebra is not None and make_algebra(self.algebra).dim != data.shape[2]:
            raise DimensionMismatchError(f"{self.algebra.value} blocks are {make_algebra(self.algebra).dim}x"
                                         f"{make_algebra(self.algebra).dim}, got {data.shape[2]}")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def a(self) -> int:
        return self.data.shape[2]

    @property
    def m_len(self) -> int:
        return self.data.shape[0]

    @property
    def n_len(self) -> int:
        return self.data.shape[1]

    @property
    def field(self) -> GroundField:
        return GroundField.COMPLEX if np.iscomplexobj(self.data) else GroundField.REAL

    @classmethod
    def from_coefficients(cls, grid, algebra: AlgebraSpec | AlgebraTag) -> "Signal2D":
        """
        Embed an (M, N, dim) grid of coefficient vectors.

        Args:
            grid: Coefficients of each sample
            algebra: Algebra whose matrix representation is used
        """
        if not isinstance(algebra, AlgebraSpec):
            algebra = make_algebra(algebra)
        grid = _storage(grid)
        if grid.ndim != 3 or grid.shape[2] != algebra.dim:
            raise DimensionMismatchError(f"Expected an M x N x {algebra.dim} grid, got shape {grid.shape}")
        # block[c, k] = sum_i coeff_i * T[i, k, c], the left-multiplication matrix
        blocks = np.einsum("mni,ikc->mnck", grid, algebra.structure_tensor())
        return cls(blocks, algebra.tag)

    def to_coefficients(self, algebra: AlgebraSpec | AlgebraTag | None = None, tol: float | None = None) -> np.ndarray:
        """
        Coefficient grid of the blocks.

        Raises:
            NotInImageError: some block is not the representation of an algebra element
        """
        algebra = algebra or self.algebra
        if algebra is None:
            raise DimensionMismatchError("Signal has no algebra; pass one explicitly")
        if not isinstance(algebra, AlgebraSpec):
            algebra = make_algebra(algebra)
        tol = get_config().image_tol if tol is None else tol

        grid = self.data[:, :, :, 0]
        residual = max_norm(Signal2D.from_coefficients(grid, algebra).data - self.data)
        if residual > tol:
            raise NotInImageError(
                f"Signal blocks are not in the image of the {algebra.tag.value} representation "
                f"(re-embedding residual {residual:.3e})"
            )
        return grid

    def to_block_matrix(self) -> np.ndarray:
        """(a*M, a*N) matrix with sample (m, n) in block row m, block column n"""
        m_len, n_len, a, _ = self.data.shape
        return self.data.transpose(0, 2, 1, 3).reshape(m_len * a, n_len * a)

    @classmethod
    def from_block_matrix(cls, block, a: int, algebra: AlgebraTag | None = None) -> "Signal2D":
        block = np.asarray(block)
        if block.ndim != 2 or block.shape[0] % a or block.shape[1] % a:
            raise DimensionMismatchError(f"Block matrix of shape {block.shape} does not tile into {a}x{a} blocks")
        m_len, n_len = block.shape[0] // a, block.shape[1] // a
        return cls(block.reshape(m_len, a, n_len, a).transpose(0, 2, 1, 3), algebra)


def _check_root(name: str, root: MatrixRoot, size: int) -> None:
    if root.n != size:
        raise DimensionMismatchError(f"Root {name} is {root.n}x{root.n} but samples have dimension {size}")


def _prepare(data: np.ndarray, roots: list[MatrixRoot], promote: bool) -> np.ndarray:
    if np.iscomplexobj(data) or all(is_real_valued(r.entries) for r in roots):
        return data
    if not promote:
        raise FieldMismatchError("Complex root applied to a real signal (promotion disabled)")
    logger.warning("Promoting real signal to complex storage for a complex root")
    return data.astype(np.complex128)


def _workers(workers: int | None) -> int:
    return get_config().max_workers if workers is None else max(1, workers)


def _run_chunks(func, count: int, workers: int) -> list:
    chunks = chunk_indices(count, workers)
    if len(chunks) == 1:
        return [func(chunks[0])]
    with ThreadPoolExecutor(max_workers=len(chunks)) as executor:
        return list(executor.map(func, chunks))


def _transform_columns(data: np.ndarray, root: MatrixRoot, factor: float, workers: int) -> np.ndarray:
    """F[:, u] = factor * sum_m exp(-J 2 pi m u / M) f[:, m], summed in ascending m"""
    n, length = data.shape
    table = exponential_table(root, length, sign=-1)
    dtype = np.result_type(data, table)
    compensate = length >= get_config().compensate_from

    def columns(u: np.ndarray) -> np.ndarray:
        acc = CompensatedSum((u.size, n), dtype, enabled=compensate)
        for m in range(length):
            acc.add(ordered_matvec(table[(m * u) % length], data[:, m]))
        return acc.result()

    blocks = _run_chunks(columns, length, workers)
    return factor * np.concatenate(blocks, axis=0).T


def dft1d(f: Signal1D, root: MatrixRoot, direction: Direction = Direction.FORWARD,
          scale: ScaleConvention = ScaleConvention.INVERSE_SCALED, *,
          promote: bool = True, workers: int | None = None) -> Signal1D:
    """
    One-sided matrix DFT.

    Forward:  F[:, u] = S sum_m exp(-J 2 pi m u / M) f[:, m]
    Inverse:  the same sum with -J in place of J and T in place of S.

    Args:
        f: Signal, one sample per column
        root: n x n root of minus one
        direction: Forward or inverse
        scale: Scale convention
        promote: Allow promoting a real signal to complex for a complex root
        workers: Threads evaluating output columns (default from config)

    Returns:
        Signal1D with the same layout

    Raises:
        DimensionMismatchError: root and samples differ in dimension
        FieldMismatchError: complex root, real signal and promote=False
    """
    _check_root("J", root, f.n)
    data = _prepare(f.data, [root], promote)
    if direction is Direction.INVERSE:
        root = root.negate()
    factor = scale.factor(direction, f.m_len)
    logger.debug(f"dft1d {direction.value}: n={f.n}, M={f.m_len}, scale={scale.value}")
    out = _transform_columns(data, root, factor, _workers(workers))
    return Signal1D(out, _complexified(f.algebra, out))


def dft1d_right(f: Signal1D, root: MatrixRoot, direction: Direction = Direction.FORWARD,
                scale: ScaleConvention = ScaleConvention.INVERSE_SCALED, **kwargs) -> Signal1D:
    """
    Quaternion transform with the exponential on the right of each sample.

    F[u] = S sum_m f[m] exp(-mu 2 pi m u / M) in quaternion arithmetic,
    evaluated as the left transform with the transmuted root.
    """
    return dft1d(f, transmute(root), direction, scale, **kwargs)


def reference_dft1d(f: Signal1D, root: MatrixRoot, *, promote: bool = True) -> Signal1D:
    """
    Unscaled forward transform as a plain double loop with a fresh general
    matrix exponential per term. Oracle for dft1d.
    """
    _check_root("J", root, f.n)
    data = _prepare(f.data, [root], promote)
    length = f.m_len
    j = root.entries
    out = np.zeros(data.shape, dtype=np.result_type(data, j))
    for m in range(length):
        for u in range(length):
            out[:, u] = out[:, u] + expm(-j * 2 * np.pi * ((m * u) % length) / length) @ data[:, m]
    return Signal1D(out, _complexified(f.algebra, out))


def classic_complex_dft(x, direction: Direction = Direction.FORWARD,
                        scale: ScaleConvention = ScaleConvention.INVERSE_SCALED) -> np.ndarray:
    """
    Complex DFT by direct summation.

    Args:
        x: M complex samples, M >= 1
        direction: Forward uses exp(-j...), inverse exp(+j...)
        scale: Scale convention

    Returns:
        M complex coefficients
    """
    x = np.asarray(x, dtype=complex).ravel()
    length = x.size
    if length < 1:
        raise DimensionMismatchError("classic_complex_dft needs at least one sample")
    sign = -1.0 if direction is Direction.FORWARD else 1.0
    twiddle = np.exp(sign * 2j * np.pi * np.arange(length) / length)
    u = np.arange(length)
    acc = CompensatedSum(length, complex, enabled=length >= get_config().compensate_from)
    for m in range(length):
        acc.add(x[m] * twiddle[(m * u) % length])
    return scale.factor(direction, length) * acc.result()


def dft2d_two_sided(f: Signal2D, j_root: MatrixRoot, k_root: MatrixRoot,
                    direction: Direction = Direction.FORWARD,
                    scale: ScaleConvention = ScaleConvention.INVERSE_SCALED, *,
                    promote: bool = True, workers: int | None = None) -> Signal2D:
    """
    Two-sided 2D matrix DFT.

    F[u, v] = S sum_m sum_n exp(-J 2 pi m u / M) f[m, n] exp(-K 2 pi n v / N)

    The inverse negates both roots and uses T. J and K need not commute.
    The double sum is evaluated as a right pass over n followed by a left
    pass over m, both in ascending order.

    Args:
        f: Signal of a x a blocks
        j_root: Left root (acts along m)
        k_root: Right root (acts along n)
        direction: Forward or inverse
        scale: Scale convention, S * T = 1/(M N)
        promote: Allow promoting a real signal to complex for complex roots
        workers: Threads evaluating output rows (default from config)
    """
    _check_root("J", j_root, f.a)
    _check_root("K", k_root, f.a)
    data = _prepare(f.data, [j_root, k_root], promote)
    if direction is Direction.INVERSE:
        j_root, k_root = j_root.negate(), k_root.negate()
    m_len, n_len, a = f.m_len, f.n_len, f.a
    factor = scale.factor(direction, m_len * n_len)
    config = get_config()

    left = exponential_table(j_root, m_len, sign=-1)
    right = exponential_table(k_root, n_len, sign=-1)
    dtype = np.result_type(data, left, right)

    # G[m, v] = sum_n f[m, n] exp(-K 2 pi n v / N)
    v = np.arange(n_len)
    partial = CompensatedSum((m_len, n_len, a, a), dtype, enabled=n_len >= config.compensate_from)
    for n in range(n_len):
        partial.add(ordered_matmul(data[:, n][:, None], right[(n * v) % n_len][None]))
    g = partial.result()

    def rows(u: np.ndarray) -> np.ndarray:
        acc = CompensatedSum((u.size, n_len, a, a), dtype, enabled=m_len >= config.compensate_from)
        for m in range(m_len):
            acc.add(ordered_matmul(left[(m * u) % m_len][:, None], g[m][None]))
        return acc.result()

    logger.debug(f"dft2d {direction.value}: a={a}, M={m_len}, N={n_len}, scale={scale.value}")
    blocks = _run_chunks(rows, m_len, _workers(workers))
    out = factor * np.concatenate(blocks, axis=0)
    algebra = f.algebra if is_real_valued(out) or f.algebra is not AlgebraTag.QUATERNION else AlgebraTag.BIQUATERNION
    return Signal2D(out, algebra)


def reference_dft2d(f: Signal2D, j_root: MatrixRoot, k_root: MatrixRoot, *, promote: bool = True) -> Signal2D:
    """
    Unscaled two-sided forward transform as a quadruple loop over the block
    matrix, with fresh general matrix exponentials. Oracle for dft2d_two_sided.
    """
    _check_root("J", j_root, f.a)
    _check_root("K", k_root, f.a)
    a = j_root.n
    block = _prepare(f.to_block_matrix(), [j_root, k_root], promote)
    m_len, n_len = block.shape[0] // a, block.shape[1] // a
    j, k = j_root.entries, k_root.entries
    out = np.zeros(block.shape, dtype=np.result_type(block, j, k))
    for u in range(m_len):
        for v in range(n_len):
            for m in range(m_len):
                for n in range(n_len):
                    out[a * u:a * u + a, a * v:a * v + a] = (
                        out[a * u:a * u + a, a * v:a * v + a]
                        + expm(-j * 2 * np.pi * ((m * u) % m_len) / m_len)
                        @ block[a * m:a * m + a, a * n:a * n + a]
                        @ expm(-k * 2 * np.pi * ((n * v) % n_len) / n_len)
                    )
    algebra = f.algebra if is_real_valued(out) or f.algebra is not AlgebraTag.QUATERNION else AlgebraTag.BIQUATERNION
    return Signal2D.from_block_matrix(out, a, algebra)


def phasor_path(root: MatrixRoot, u0: int, length: int, coeff) -> np.ndarray:
    """
    Points f[:, m] = exp(J 2 pi m u0 / M) (x, y) traced by a single spectral line.

    Args:
        root: 2x2 root of minus one
        u0: Frequency index of the spectral line
        length: Number of points M (at least 3)
        coeff: The (x, y) value of the spectral line

    Returns:
        (M, 2) array of points
    """
    if root.n != 2:
        raise DimensionMismatchError(f"Phasor paths need a 2x2 root, got {root.n}x{root.n}")
    if length < 3:
        raise HxdftError(f"Phasor path needs at least 3 points, got {length}")
    coeff = np.asarray(coeff)
    if coeff.shape != (2,):
        raise DimensionMismatchError(f"Phasor path coefficient must be a 2-vector, got shape {coeff.shape}")
    return np.array([
        euler_exp(root, 2 * np.pi * m * u0 / length).entries @ coeff
        for m in range(length)
    ])


def spectrum_energy(signal: Signal1D | Signal2D) -> float:
    """Frobenius norm of the stored samples"""
    return float(np.linalg.norm(signal.data.ravel()))
