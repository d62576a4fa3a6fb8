import logging

import numpy as np

logger = logging.getLogger(__name__)


def max_norm(a) -> float:
    """Largest absolute entry of an array (0.0 for empty input)"""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def is_real_valued(a) -> bool:
    """True when an array has a real dtype or all-zero imaginary parts"""
    a = np.asarray(a)
    if not np.iscomplexobj(a):
        return True
    return not np.any(a.imag)


def _neumaier_step(total: np.ndarray, compensation: np.ndarray, term: np.ndarray):
    updated = total + term
    larger = np.abs(total) >= np.abs(term)
    compensation += np.where(larger, (total - updated) + term, (term - updated) + total)
    return updated


class CompensatedSum:
    """
    Elementwise Neumaier summation over numpy arrays.

    Complex arrays are compensated on their real and imaginary parts
    separately. With ``enabled=False`` the accumulator degrades to plain
    ascending summation so both paths share one call site.
    """

    def __init__(self, shape, dtype, enabled: bool = True):
        self.enabled = enabled
        self.is_complex = np.issubdtype(np.dtype(dtype), np.complexfloating)
        self.total = np.zeros(shape, dtype=dtype)
        if self.is_complex:
            real_dtype = np.zeros((), dtype=dtype).real.dtype
            self._re = np.zeros(shape, dtype=real_dtype)
            self._im = np.zeros(shape, dtype=real_dtype)
            self._c_re = np.zeros(shape, dtype=real_dtype)
            self._c_im = np.zeros(shape, dtype=real_dtype)
        else:
            self._c = np.zeros(shape, dtype=dtype)

    def add(self, term) -> None:
        if not self.enabled:
            self.total = self.total + term
            return

        term = np.asarray(term)
        if self.is_complex:
            self._re = _neumaier_step(self._re, self._c_re, np.real(term))
            self._im = _neumaier_step(self._im, self._c_im, np.imag(term))
        else:
            self.total = _neumaier_step(self.total, self._c, term)

    def result(self) -> np.ndarray:
        if not self.enabled:
            return self.total
        if self.is_complex:
            return (self._re + self._c_re) + 1j * (self._im + self._c_im)
        return self.total + self._c


def ordered_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Stacked matrix product with the inner index summed in ascending order.

    Each output entry depends only on its own operands, so the result does
    not change with the batch size a caller happens to use.
    """
    inner = a.shape[-1]
    if b.shape[-2] != inner:
        raise ValueError(f"Inner dimensions differ: {a.shape} @ {b.shape}")
    out = a[..., :, 0:1] * b[..., 0:1, :]
    for k in range(1, inner):
        out = out + a[..., :, k:k + 1] * b[..., k:k + 1, :]
    return out


def ordered_matvec(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Stacked matrix-vector product, inner index in ascending order"""
    out = a[..., :, 0] * x[..., 0:1]
    for k in range(1, a.shape[-1]):
        out = out + a[..., :, k] * x[..., k:k + 1]
    return out


def chunk_indices(count: int, workers: int) -> list[np.ndarray]:
    """Split range(count) into at most `workers` contiguous chunks"""
    workers = max(1, min(workers, count)) if count else 1
    return [chunk for chunk in np.array_split(np.arange(count), workers) if chunk.size]


def make_rng(seed: int | None = None) -> np.random.Generator:
    """Create the numpy generator used throughout verification and tests"""
    return np.random.default_rng(seed)


def random_unit_vector(rng: np.random.Generator, size: int = 3) -> np.ndarray:
    """Uniformly distributed unit vector"""
    while True:
        v = rng.standard_normal(size)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            return v / norm


def random_coefficients(rng: np.random.Generator, shape, is_complex: bool = False) -> np.ndarray:
    """Standard normal samples, complex when requested"""
    values = rng.standard_normal(shape)
    if is_complex:
        values = values + 1j * rng.standard_normal(shape)
    return values
