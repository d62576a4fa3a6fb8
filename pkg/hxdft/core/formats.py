"""
hxdft - Signal and root files

Signal files are a one-line header followed by comma-separated rows:

    hxdft-signal v1 <algebra|generic> <real|complex> <n> <M>
    hxdft-signal v1 <algebra|generic> <real|complex> <a> <M> <N>

A 1D file holds n rows of M values, one row per component. A 2D file with an
algebra tag holds the coefficient grids of its a components, each as M rows
of N values. A generic 2D file holds the raw block matrix, a*M rows of a*N
values, for blocks outside every algebra representation.
Complex values are written as adjacent re,im columns. Root files are JSON
in the MatrixRoot.to_dict layout.
"""

import json
import logging
from pathlib import Path

import numpy as np

from hxdft.core.algebra import AlgebraTag, GroundField, make_algebra
from hxdft.core.dft import Signal1D, Signal2D
from hxdft.core.errors import DimensionMismatchError, NotInImageError, SignalFormatError
from hxdft.core.roots import MatrixRoot

logger = logging.getLogger(__name__)

MAGIC = "hxdft-signal"
VERSION = "v1"
GENERIC = "generic"


def _format_value(value: float) -> str:
    # 17 significant digits round-trip every binary64 value
    return f"{value:.17g}"


def _format_row(row: np.ndarray, is_complex: bool) -> str:
    if is_complex:
        values = np.column_stack([row.real, row.imag]).ravel()
    else:
        values = row
    return ",".join(_format_value(float(v)) for v in values)


def _parse_row(line: str, count: int, is_complex: bool, lineno: int) -> np.ndarray:
    try:
        values = np.array([float(v) for v in line.split(",")])
    except ValueError as e:
        raise SignalFormatError(f"line {lineno}: non-numeric value ({e})") from e
    expected = 2 * count if is_complex else count
    if values.size != expected:
        raise SignalFormatError(f"line {lineno}: expected {expected} values, got {values.size}")
    if is_complex:
        return values[0::2] + 1j * values[1::2]
    return values


def _coefficient_grid(signal: Signal2D) -> np.ndarray | None:
    if signal.algebra is None:
        return None
    try:
        return signal.to_coefficients()
    except NotInImageError as e:
        logger.info(f"Writing raw blocks: {e}")
        return None


def format_signal(signal: Signal1D | Signal2D) -> str:
    """
    Render a signal in the text file format.

    2D signals whose blocks are not representations of their algebra are
    written as a generic block matrix.
    """
    is_complex = signal.field is GroundField.COMPLEX
    algebra = signal.algebra.value if signal.algebra is not None else GENERIC

    if isinstance(signal, Signal1D):
        header = f"{MAGIC} {VERSION} {algebra} {signal.field.value} {signal.n} {signal.m_len}"
        rows = [_format_row(row, is_complex) for row in signal.data]
    else:
        grid = _coefficient_grid(signal)
        if grid is None:
            algebra = GENERIC
            rows = [_format_row(row, is_complex) for row in signal.to_block_matrix()]
        else:
            rows = [_format_row(grid[m, :, c], is_complex) for c in range(signal.a) for m in range(signal.m_len)]
        header = f"{MAGIC} {VERSION} {algebra} {signal.field.value} {signal.a} {signal.m_len} {signal.n_len}"

    return "\n".join([header, *rows]) + "\n"


def _parse_header(line: str) -> tuple[AlgebraTag | None, bool, tuple[int, ...]]:
    parts = line.split()
    if len(parts) not in (6, 7) or parts[0] != MAGIC:
        raise SignalFormatError(f"Malformed signal header: {line!r}")
    if parts[1] != VERSION:
        raise SignalFormatError(f"Unsupported signal format version {parts[1]!r}")
    try:
        algebra = None if parts[2] == GENERIC else AlgebraTag.parse(parts[2])
        field = GroundField(parts[3])
        dims = tuple(int(v) for v in parts[4:])
    except ValueError as e:
        raise SignalFormatError(f"Malformed signal header: {e}") from e
    if any(d < 1 for d in dims):
        raise SignalFormatError(f"Signal dimensions must be positive, got {dims}")
    return algebra, field is GroundField.COMPLEX, dims


def parse_signal(text: str) -> Signal1D | Signal2D:
    """
    Parse the text file format.

    Raises:
        SignalFormatError: malformed header, wrong row or value counts, non-numeric values
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise SignalFormatError("Empty signal file")

    algebra, is_complex, dims = _parse_header(lines[0])
    body = lines[1:]

    if len(dims) == 2:
        n, m_len = dims
        if len(body) != n:
            raise SignalFormatError(f"Expected {n} rows, got {len(body)}")
        data = np.array([_parse_row(line, m_len, is_complex, i + 2) for i, line in enumerate(body)])
        try:
            return Signal1D(data, algebra)
        except DimensionMismatchError as e:
            raise SignalFormatError(str(e)) from e

    a, m_len, n_len = dims
    if algebra is None:
        if len(body) != a * m_len:
            raise SignalFormatError(f"Expected {a * m_len} rows, got {len(body)}")
        block = np.array([_parse_row(line, a * n_len, is_complex, i + 2) for i, line in enumerate(body)])
        return Signal2D.from_block_matrix(block, a)

    if make_algebra(algebra).dim != a:
        raise SignalFormatError(f"{algebra.value} has {make_algebra(algebra).dim} components, header says {a}")
    if len(body) != a * m_len:
        raise SignalFormatError(f"Expected {a * m_len} rows, got {len(body)}")
    rows = np.array([_parse_row(line, n_len, is_complex, i + 2) for i, line in enumerate(body)])
    grid = rows.reshape(a, m_len, n_len).transpose(1, 2, 0)
    return Signal2D.from_coefficients(grid, algebra)


def read_signal(path: str | Path) -> Signal1D | Signal2D:
    signal = parse_signal(Path(path).read_text())
    logger.debug(f"Read signal {path}: shape {signal.data.shape}")
    return signal


def write_signal(path: str | Path, signal: Signal1D | Signal2D) -> None:
    Path(path).write_text(format_signal(signal))
    logger.debug(f"Wrote signal {path}: shape {signal.data.shape}")


def format_root(root: MatrixRoot) -> str:
    return json.dumps(root.to_dict(), indent=2) + "\n"


def parse_root(text: str, tol: float | None = None) -> MatrixRoot:
    """
    Parse and validate a JSON root.

    Raises:
        SignalFormatError: not JSON, or missing entries
        RootValidationError: the matrix is not a root of -1
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SignalFormatError(f"Root file is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise SignalFormatError("Root file must hold a JSON object")
    return MatrixRoot.from_dict(data, tol=tol)


def read_root(path: str | Path, tol: float | None = None) -> MatrixRoot:
    root = parse_root(Path(path).read_text(), tol=tol)
    logger.debug(f"Read root {path}: {root}")
    return root


def write_root(path: str | Path, root: MatrixRoot) -> None:
    Path(path).write_text(format_root(root))
    logger.debug(f"Wrote root {path}")
