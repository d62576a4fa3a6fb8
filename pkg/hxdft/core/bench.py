"""
hxdft - Benchmarks

Times the reference double loop against the table-driven dft1d and checks
that both agree while doing so.
"""

import logging
import time
from dataclasses import asdict, dataclass

import logfire
import numpy as np

from hxdft.core.dft import Signal1D, dft1d, reference_dft1d
from hxdft.core.errors import AgreementError
from hxdft.core.roots import MatrixRoot, builtin_roots
from hxdft.core.utils import make_rng, max_norm, random_coefficients

logger = logging.getLogger(__name__)

DEFAULT_SIZES = (16, 64, 256)
AGREEMENT_TOL = 1e-11


@dataclass(frozen=True)
class BenchResult:
    """Timing of one transform size"""
    algebra: str
    size: int
    reference_seconds: float
    fast_seconds: float
    max_error: float

    @property
    def reference_ns_per_sample(self) -> float:
        return 1e9 * self.reference_seconds / self.size

    @property
    def fast_ns_per_sample(self) -> float:
        return 1e9 * self.fast_seconds / self.size

    @property
    def speedup(self) -> float:
        return self.reference_seconds / self.fast_seconds if self.fast_seconds > 0 else float("inf")

    def to_dict(self) -> dict:
        return {
            **asdict(self),
            "reference_ns_per_sample": self.reference_ns_per_sample,
            "fast_ns_per_sample": self.fast_ns_per_sample,
        }


def _timed(func):
    start = time.perf_counter()
    result = func()
    return result, time.perf_counter() - start


def bench_size(name: str, root: MatrixRoot, size: int, repeat: int, rng: np.random.Generator,
               workers: int | None = None) -> BenchResult:
    """
    Time one size and assert agreement.

    Raises:
        AgreementError: outputs differ by more than AGREEMENT_TOL relative to the spectrum
    """
    f = Signal1D(random_coefficients(rng, (root.n, size), np.iscomplexobj(root.entries)))

    with logfire.span("bench {algebra} M={size}", algebra=name, size=size):
        reference, reference_seconds = _timed(lambda: reference_dft1d(f, root))
        fast_seconds = float("inf")
        for _ in range(max(1, repeat)):
            fast, seconds = _timed(lambda: dft1d(f, root, workers=workers))
            fast_seconds = min(fast_seconds, seconds)

    error = max_norm(fast.data - reference.data)
    bound = AGREEMENT_TOL * max(1.0, max_norm(reference.data))
    if error > bound:
        raise AgreementError(f"{name} M={size}: table-driven and reference transforms differ by {error:.3e}")

    result = BenchResult(name, size, reference_seconds, fast_seconds, error)
    logger.info(f"{name} M={size}: reference {reference_seconds:.4f}s, fast {fast_seconds:.4f}s")
    return result


def run_benchmark(algebra: str, sizes=DEFAULT_SIZES, repeat: int = 3, rng: np.random.Generator | None = None,
                  workers: int | None = None) -> list[BenchResult]:
    """
    Benchmark the catalog root of an algebra.

    Args:
        algebra: Catalog root name (see builtin_roots)
        sizes: Signal lengths M
        repeat: Runs of the fast path per size (best is kept)
        rng: Random generator for the signals
        workers: Worker threads for the fast path

    Returns:
        list: One BenchResult per size
    """
    roots = builtin_roots()
    if algebra not in roots:
        raise ValueError(f"Unknown root '{algebra}' (expected one of: {', '.join(roots)})")
    rng = rng or make_rng(0)
    return [bench_size(algebra, roots[algebra], int(size), repeat, rng, workers) for size in sizes]


def format_table(results: list[BenchResult]) -> str:
    lines = [f"{'algebra':<14}{'M':>6}{'ref ns/sample':>16}{'fast ns/sample':>16}{'speedup':>10}{'max error':>12}"]
    for r in results:
        lines.append(
            f"{r.algebra:<14}{r.size:>6}{r.reference_ns_per_sample:>16.1f}{r.fast_ns_per_sample:>16.1f}"
            f"{r.speedup:>10.1f}{r.max_error:>12.2e}"
        )
    return "\n".join(lines)
