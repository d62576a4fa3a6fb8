#!/usr/bin/env python

"""
hxdft - Verification Engine

Registry of numerical properties and the engine that runs them, reporting
one stable line per property:

    PROP <name> PASS|FAIL residual=<r>
"""

import logging
import math
import time
from abc import ABC, abstractmethod
from enum import Enum
from functools import partial
from typing import Any, Callable, Dict, List

import logfire
import numpy as np

from hxdft.core import algebra
from hxdft.core.algebra import AlgebraTag, GroundField, HValue, make_algebra, multiply
from hxdft.core.config import HxdftConfig, get_config
from hxdft.core.conic import fit_conic
from hxdft.core.dft import (Direction, ScaleConvention, Signal1D, Signal2D, classic_complex_dft, dft1d,
                            dft1d_right, dft2d_two_sided, phasor_path, reference_dft1d, reference_dft2d,
                            spectrum_energy)
from hxdft.core.matexp import euler_exp, series_exp
from hxdft.core.roots import (MatrixRoot, RootRejection, builtin_roots, quaternion_root, root2x2_bc,
                              search_real_root_residual, transmute_matrix, validate_root)
from hxdft.core.utils import make_rng, max_norm, random_coefficients

logger = logging.getLogger(__name__)

GROUPS = ("complex", "quaternion", "biquaternion", "cl11", "cl20", "param", "general")

_S3 = math.sqrt(3.0)

# Root matrices as printed for the catalog examples
PRINTED_ROOTS: Dict[str, np.ndarray] = {
    "complex": np.array([[0.0, -1.0], [1.0, 0.0]]),
    "quaternion": np.array([
        [0, -1, -1, -1],
        [1, 0, -1, 1],
        [1, 1, 0, -1],
        [1, -1, 1, 0],
    ]) / _S3,
    "biquaternion": np.array([
        [0, -1, -1 - 1j, -1 + 1j],
        [1, 0, -1 + 1j, 1 + 1j],
        [1 + 1j, 1 - 1j, 0, -1],
        [1 - 1j, -1 - 1j, 1, 0],
    ]),
    "cl11": np.array([
        [0, 1, -_S3, 1],
        [1, 0, -1, _S3],
        [_S3, -1, 0, 1],
        [1, -_S3, 1, 0],
    ]),
    "cl20": np.array([
        [0, 1, 1, -_S3],
        [1, 0, _S3, -1],
        [1, -_S3, 0, 1],
        [_S3, -1, 1, 0],
    ]),
}

# Catalog roots exercised by each algebra group
_GROUP_ROOTS: Dict[str, tuple[str, ...]] = {
    "complex": ("complex",),
    "quaternion": ("quaternion",),
    "biquaternion": ("biquaternion",),
    "cl11": ("cl11",),
    "cl20": ("cl20",),
    "param": ("param-ab", "param-ac", "param-bc"),
}

_GROUP_ALGEBRA: Dict[str, AlgebraTag] = {
    "complex": AlgebraTag.COMPLEX,
    "quaternion": AlgebraTag.QUATERNION,
    "biquaternion": AlgebraTag.BIQUATERNION,
    "cl11": AlgebraTag.CL11,
    "cl20": AlgebraTag.CL20,
}


class PropertyStatus(Enum):
    """Status of a property"""
    NOT_RUN = "not_run"
    PASSED = "passed"
    FAILED = "failed"
    ERROR = "error"


class Property(ABC):
    """
    Base class for verification properties.

    A property measures one residual and compares it with its threshold.
    """

    def __init__(self, property_id: str, group: str, description: str, threshold: float):
        """
        Initialize a property.

        Args:
            property_id: Unique name, printed in the report
            group: Group the property runs under
            description: What is being checked
            threshold: Bound the residual is compared with
        """
        self.property_id = property_id
        self.group = group
        self.description = description
        self.threshold = threshold

        self.status = PropertyStatus.NOT_RUN
        self.residual: float = math.nan
        self.elapsed: float = 0.0
        self.error: str | None = None

    @abstractmethod
    def measure(self, rng: np.random.Generator) -> float:
        """
        Compute the residual for this property.

        Args:
            rng: Random generator for sampled inputs

        Returns:
            float: The measured residual
        """
        pass

    def accepts(self, residual: float) -> bool:
        return residual <= self.threshold

    @property
    def passed(self) -> bool:
        return self.status == PropertyStatus.PASSED

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert property information to dictionary format.

        Returns:
            dict: Property information as dictionary
        """
        return {
            'property_id': self.property_id,
            'group': self.group,
            'description': self.description,
            'status': self.status.value,
            'residual': self.residual,
            'threshold': self.threshold,
            'elapsed_time': self.elapsed,
            'error': self.error,
        }


class ResidualProperty(Property):
    """Property backed by a residual function; passes when residual <= threshold"""

    def __init__(self, property_id: str, group: str, description: str, threshold: float,
                 measure_fn: Callable[[np.random.Generator], float]):
        super().__init__(property_id, group, description, threshold)
        self.measure_fn = measure_fn

    def measure(self, rng: np.random.Generator) -> float:
        return float(self.measure_fn(rng))


class ObstructionProperty(ResidualProperty):
    """Passes when the residual stays at or above a floor (nothing gets close)"""

    def accepts(self, residual: float) -> bool:
        return residual >= self.threshold


class VerificationEngine:
    """
    Engine for running groups of verification properties.

    Handles property registration, execution and reporting. A property that
    raises is marked ERROR and the run continues.
    """

    def __init__(self, config: HxdftConfig | None = None):
        self.config = config or get_config()
        self.properties: Dict[str, Property] = {}
        logger.debug("Verification engine initialized")

    def register_property(self, prop: Property) -> bool:
        """
        Register a new property.

        Returns:
            bool: True if registration successful, False if the id is taken
        """
        if prop.property_id in self.properties:
            logger.warning(f"Property {prop.property_id} already registered")
            return False

        self.properties[prop.property_id] = prop
        logger.debug(f"Registered property: {prop.property_id} ({prop.group})")
        return True

    def unregister_property(self, property_id: str) -> bool:
        if property_id not in self.properties:
            logger.warning(f"Property {property_id} not found")
            return False

        self.properties.pop(property_id)
        logger.debug(f"Unregistered property: {property_id}")
        return True

    def get_property(self, property_id: str) -> Property | None:
        return self.properties.get(property_id)

    def get_all_properties(self, groups: List[str] | None = None) -> List[Property]:
        """
        Registered properties in registration order.

        Args:
            groups: Only properties of these groups (all when None)
        """
        return [p for p in self.properties.values() if groups is None or p.group in groups]

    def run(self, groups: List[str] | None = None, rng: np.random.Generator | None = None) -> bool:
        """
        Run the selected properties.

        Args:
            groups: Groups to run (all when None)
            rng: Random generator (seeded from config when None)

        Returns:
            bool: True if every selected property passed
        """
        if groups is not None:
            unknown = sorted(set(groups) - set(GROUPS))
            if unknown:
                raise ValueError(f"Unknown verification group(s): {', '.join(unknown)}")
        rng = rng or make_rng(self.config.seed)

        selected = self.get_all_properties(groups)
        for prop in selected:
            self._run_property(prop, rng)

        failed = [p.property_id for p in selected if not p.passed]
        if failed:
            logger.error(f"{len(failed)} of {len(selected)} properties failed: {', '.join(failed)}")
        else:
            logger.info(f"All {len(selected)} properties passed")
        return not failed

    def _run_property(self, prop: Property, rng: np.random.Generator) -> None:
        start = time.perf_counter()
        with logfire.span("verify {property_id}", property_id=prop.property_id, group=prop.group):
            try:
                prop.residual = prop.measure(rng)
                prop.error = None
                prop.status = PropertyStatus.PASSED if prop.accepts(prop.residual) else PropertyStatus.FAILED
            except Exception as e:
                logger.error(f"Error checking property {prop.property_id}: {e}")
                prop.residual = math.nan
                prop.error = str(e)
                prop.status = PropertyStatus.ERROR
        prop.elapsed = time.perf_counter() - start
        logger.info(f"{prop.property_id}: {prop.status.value} (residual {prop.residual:.3e}, {prop.elapsed:.2f}s)")

    def format_report(self, groups: List[str] | None = None) -> str:
        lines = []
        for prop in self.get_all_properties(groups):
            if prop.status == PropertyStatus.NOT_RUN:
                continue
            verdict = "PASS" if prop.passed else "FAIL"
            lines.append(f"PROP {prop.property_id} {verdict} residual={prop.residual:.3e}")
        return "\n".join(lines)

    def get_status_summary(self) -> dict:
        """
        Get a summary of all properties and their statuses.

        Returns:
            dict: Summary of property statuses
        """
        props = list(self.properties.values())
        return {
            'total_properties': len(props),
            'passed': sum(p.status == PropertyStatus.PASSED for p in props),
            'failed': sum(p.status == PropertyStatus.FAILED for p in props),
            'errors': sum(p.status == PropertyStatus.ERROR for p in props),
            'properties': [p.to_dict() for p in props],
        }


# Residual functions. Each takes the roots it checks plus (rng, config).

def _random_signal(rng: np.random.Generator, root: MatrixRoot, length: int) -> Signal1D:
    is_complex = np.iscomplexobj(root.entries)
    return Signal1D(random_coefficients(rng, (root.n, length), is_complex))


def _random_hvalue(rng: np.random.Generator, tag: AlgebraTag) -> HValue:
    spec = make_algebra(tag)
    return HValue(spec, random_coefficients(rng, spec.dim, is_complex=spec.field is GroundField.COMPLEX))


def _printed_matrix(name: str, roots: Dict[str, MatrixRoot], rng) -> float:
    return max_norm(roots[name].entries - PRINTED_ROOTS[name])


def _root_residual(names, roots: Dict[str, MatrixRoot], rng) -> float:
    n = roots[names[0]].n
    return max(max_norm(roots[k].entries @ roots[k].entries + np.eye(n)) for k in names)


def _spectrum(names, roots: Dict[str, MatrixRoot], rng) -> float:
    worst = 0.0
    for k in names:
        eig = roots[k].eigenvalues()
        worst = max(worst, float(np.max(np.minimum(np.abs(eig - 1j), np.abs(eig + 1j)))))
    return worst


def _homomorphism(tag: AlgebraTag, config: HxdftConfig, rng) -> float:
    worst = 0.0
    for _ in range(config.pairs_per_algebra):
        a, b = _random_hvalue(rng, tag), _random_hvalue(rng, tag)
        product = algebra.to_matrix(a) @ algebra.to_matrix(b)
        worst = max(worst, max_norm(product - algebra.to_matrix(multiply(a, b))))
    return worst


def _euler_series(names, roots: Dict[str, MatrixRoot], config: HxdftConfig, rng) -> float:
    worst = 0.0
    for k in names:
        root = roots[k]
        for theta in rng.uniform(-4 * np.pi, 4 * np.pi, config.thetas_per_root):
            closed = euler_exp(root, theta).entries
            worst = max(worst, max_norm(closed - series_exp(root.entries * theta)))
    return worst


def _round_trip(names, roots: Dict[str, MatrixRoot], config: HxdftConfig, rng) -> float:
    """Worst reconstruction error relative to 1 + ||f||_max"""
    worst = 0.0
    for k in names:
        root = roots[k]
        for length in config.round_trip_sizes:
            for _ in range(config.signals_per_size):
                f = _random_signal(rng, root, length)
                for scale in ScaleConvention:
                    spectrum = dft1d(f, root, Direction.FORWARD, scale)
                    back = dft1d(spectrum, root, Direction.INVERSE, scale)
                    worst = max(worst, max_norm(back.data - f.data) / (1.0 + max_norm(f.data)))
    return worst


def _oracle_1d(names, roots: Dict[str, MatrixRoot], config: HxdftConfig, rng) -> float:
    worst = 0.0
    for k in names:
        root = roots[k]
        for length in config.oracle_sizes:
            f = _random_signal(rng, root, length)
            fast = dft1d(f, root, Direction.FORWARD, ScaleConvention.INVERSE_SCALED)
            worst = max(worst, max_norm(fast.data - reference_dft1d(f, root).data))
    return worst


def _oracle_2d(tag: AlgebraTag, j_root: MatrixRoot, k_root: MatrixRoot, config: HxdftConfig, rng) -> float:
    worst = 0.0
    spec = make_algebra(tag)
    is_complex = np.iscomplexobj(j_root.entries) or np.iscomplexobj(k_root.entries)
    for m_len in config.oracle_sizes:
        for n_len in config.oracle_sizes:
            grid = random_coefficients(rng, (m_len, n_len, spec.dim), is_complex)
            f = Signal2D.from_coefficients(grid, spec)
            fast = dft2d_two_sided(f, j_root, k_root, Direction.FORWARD, ScaleConvention.INVERSE_SCALED)
            worst = max(worst, max_norm(fast.data - reference_dft2d(f, j_root, k_root).data))
    return worst


def _classic_complex(roots: Dict[str, MatrixRoot], config: HxdftConfig, rng) -> float:
    root = roots["complex"]
    lengths = (1, 7, 32, 64, 256)
    worst = 0.0
    for k in range(config.classic_signals):
        x = random_coefficients(rng, lengths[k % len(lengths)], is_complex=True)
        matrix_form = dft1d(Signal1D.from_complex(x), root).to_complex()
        worst = max(worst, max_norm(matrix_form - classic_complex_dft(x)))
    return worst


def _unit_circle(roots: Dict[str, MatrixRoot], rng) -> float:
    fit = fit_conic(phasor_path(roots["complex"], 1, 64, (1.0, 0.0)))
    expected = np.array([1.0, 0.0, 1.0, 0.0, 0.0, -1.0])
    return max(fit.residual, max_norm(fit.coefficients - expected))


def _transmutation(config: HxdftConfig, rng) -> float:
    worst = 0.0
    for _ in range(config.pairs_per_algebra):
        p, q = _random_hvalue(rng, AlgebraTag.QUATERNION), _random_hvalue(rng, AlgebraTag.QUATERNION)
        left = algebra.to_matrix(q)
        worst = max(worst,
                    max_norm(transmute_matrix(left) @ p.coeffs - multiply(p, q).coeffs),
                    max_norm(transmute_matrix(transmute_matrix(left)) - left))
    return worst


def _right_transform(roots: Dict[str, MatrixRoot], rng) -> float:
    """Right-exponential transform against quaternion arithmetic"""
    mu = roots["quaternion"]
    spec = make_algebra(AlgebraTag.QUATERNION)
    q = algebra.from_matrix(mu.entries, spec)
    length = 8
    samples = [_random_hvalue(rng, AlgebraTag.QUATERNION) for _ in range(length)]
    spectrum = dft1d_right(Signal1D.from_hvalues(samples), mu)

    worst = 0.0
    for u in range(length):
        expected = HValue(spec, np.zeros(4))
        for m, sample in enumerate(samples):
            theta = 2 * np.pi * m * u / length
            kernel = HValue.one(spec) * math.cos(theta) - q * math.sin(theta)
            expected = expected + sample * kernel
        worst = max(worst, max_norm(spectrum.data[:, u] - expected.coeffs))
    return worst


def _parseval(name: str, roots: Dict[str, MatrixRoot], config: HxdftConfig, rng) -> float:
    """Relative energy change under the unitary transform with an orthogonal root"""
    root = roots[name]
    worst = 0.0
    for length in config.round_trip_sizes:
        f = _random_signal(rng, root, length)
        spectrum = dft1d(f, root, Direction.FORWARD, ScaleConvention.UNITARY)
        worst = max(worst, abs(spectrum_energy(spectrum) - spectrum_energy(f)) / spectrum_energy(f))
    return worst


def _two_sided_round_trip(roots: Dict[str, MatrixRoot], rng) -> float:
    """8 x 8 two-sided round trip with two non-orthogonal quaternion roots"""
    j_root = roots["quaternion"]
    k_root = quaternion_root(0.6, 0.0, 0.8)
    f = Signal2D.from_coefficients(random_coefficients(rng, (8, 8, 4)), AlgebraTag.QUATERNION)
    spectrum = dft2d_two_sided(f, j_root, k_root, Direction.FORWARD)
    back = dft2d_two_sided(spectrum, j_root, k_root, Direction.INVERSE)
    return max_norm(back.data - f.data) / (1.0 + max_norm(f.data))


def _bc_formula(roots: Dict[str, MatrixRoot], rng) -> float:
    return max_norm(roots["param-bc"].entries - np.array([[1.0, 1.0], [-2.0, -1.0]]))


def _bc_exponential(config: HxdftConfig, rng) -> float:
    """exp(J theta) against [[cos + k sin, b sin], [c sin, cos - k sin]]"""
    worst = 0.0
    for _ in range(config.thetas_per_root):
        b = rng.uniform(0.5, 3.0)
        c = -rng.uniform(1.0 / b, 4.0)
        sign = int(rng.choice([-1, 1]))
        theta = rng.uniform(-4 * np.pi, 4 * np.pi)
        kappa = sign * math.sqrt(-1.0 - b * c)
        cos, sin = math.cos(theta), math.sin(theta)
        expected = np.array([[cos + kappa * sin, b * sin], [c * sin, cos - kappa * sin]])
        worst = max(worst, max_norm(euler_exp(root2x2_bc(b, c, sign), theta).entries - expected))
    return worst


def _ellipse(roots: Dict[str, MatrixRoot], rng) -> float:
    fit = fit_conic(phasor_path(roots["param-bc"], 1, 64, (1.0, 0.0)))
    return fit.residual if fit.is_ellipse else math.inf


def _odd_rejection(config: HxdftConfig, rng) -> float:
    """Number of random real odd-dimension matrices accepted as roots"""
    accepted = 0
    for n in (3, 5):
        for _ in range(config.odd_trials):
            if not isinstance(validate_root(rng.standard_normal((n, n))), RootRejection):
                accepted += 1
    return float(accepted)


def _odd_search(config: HxdftConfig, rng) -> float:
    return search_real_root_residual(3, config.odd_restarts, rng)


def _linearity(roots: Dict[str, MatrixRoot], rng) -> float:
    """Worst deviation from linearity relative to 1 + the spectrum magnitude"""
    worst = 0.0
    for root in roots.values():
        f, g = _random_signal(rng, root, 16), _random_signal(rng, root, 16)
        a, b = rng.standard_normal(2)
        combined = dft1d(Signal1D(a * f.data + b * g.data), root)
        expected = a * dft1d(f, root).data + b * dft1d(g, root).data
        worst = max(worst, max_norm(combined.data - expected) / (1.0 + max_norm(expected)))
    return worst


def _inverse_negation(roots: Dict[str, MatrixRoot], rng) -> float:
    """Inverse transform against the forward transform with -J; exact equality expected"""
    worst = 0.0
    for name, root in roots.items():
        f = _random_signal(rng, root, 16)
        inverse = dft1d(f, root, Direction.INVERSE, ScaleConvention.INVERSE_SCALED)
        forward = dft1d(f, root.negate(), Direction.FORWARD, ScaleConvention.FORWARD_SCALED)
        worst = max(worst, max_norm(inverse.data - forward.data))
    return worst


def _worker_determinism(roots: Dict[str, MatrixRoot], rng) -> float:
    worst = 0.0
    for length in (16, 128):
        root = roots["quaternion"]
        f = _random_signal(rng, root, length)
        single = dft1d(f, root, workers=1)
        worst = max(worst, max_norm(single.data - dft1d(f, root, workers=3).data))
    return worst


def build_default_engine(config: HxdftConfig | None = None) -> VerificationEngine:
    """
    Engine with every module property registered.

    Args:
        config: Sample counts and sizes (process-wide config when None)
    """
    config = config or get_config()
    engine = VerificationEngine(config)
    roots = builtin_roots()

    def add(property_id: str, group: str, description: str, threshold: float, fn, cls=ResidualProperty):
        engine.register_property(cls(property_id, group, description, threshold, fn))

    for group, names in _GROUP_ROOTS.items():
        if group in PRINTED_ROOTS:
            add(f"{group}.printed_matrix", group, "catalog root equals the printed matrix", 1e-10,
                partial(_printed_matrix, group, roots))
        add(f"{group}.root_residual", group, "||J^2 + I||_max of catalog roots", 1e-10,
            partial(_root_residual, names, roots))
        add(f"{group}.spectrum", group, "eigenvalues of catalog roots are +-i", 1e-6,
            partial(_spectrum, names, roots))
        if group in _GROUP_ALGEBRA:
            add(f"{group}.homomorphism", group, "to_matrix(a) to_matrix(b) == to_matrix(a * b)", 1e-12,
                partial(_homomorphism, _GROUP_ALGEBRA[group], config))
        add(f"{group}.euler_series", group, "closed-form exponential matches the power series", 1e-12,
            partial(_euler_series, names, roots, config))
        add(f"{group}.round_trip", group, "inverse(forward(f)) == f for every scale convention", 1e-10,
            partial(_round_trip, names, roots, config))
        add(f"{group}.oracle_1d", group, "dft1d matches the reference double loop", 1e-11,
            partial(_oracle_1d, names, roots, config))
        if group in _GROUP_ALGEBRA:
            root = roots[names[0]]
            add(f"{group}.oracle_2d", group, "dft2d_two_sided matches the reference quadruple loop", 1e-11,
                partial(_oracle_2d, _GROUP_ALGEBRA[group], root, root, config))

    add("complex.classic_dft", "complex", "matrix form equals the complex DFT", 1e-10,
        partial(_classic_complex, roots, config))
    add("complex.unit_circle", "complex", "phasor path of the complex root is the unit circle", 1e-12,
        partial(_unit_circle, roots))
    add("complex.parseval", "complex", "unitary transform preserves energy", 1e-12,
        partial(_parseval, "complex", roots, config))

    add("quaternion.transmutation", "quaternion", "transmuted left matrix multiplies on the right", 1e-12,
        partial(_transmutation, config))
    add("quaternion.right_transform", "quaternion", "right-exponential transform matches quaternion sums", 1e-11,
        partial(_right_transform, roots))
    add("quaternion.parseval", "quaternion", "unitary transform preserves energy", 1e-12,
        partial(_parseval, "quaternion", roots, config))
    add("quaternion.two_sided_round_trip", "quaternion", "2D round trip with non-orthogonal roots", 1e-10,
        partial(_two_sided_round_trip, roots))
    add("quaternion.oracle_2d_mixed", "quaternion", "two-sided oracle with distinct J and K", 1e-11,
        partial(_oracle_2d, AlgebraTag.QUATERNION, roots["quaternion"], quaternion_root(0.6, 0.0, 0.8), config))

    add("param.bc_formula", "param", "root2x2_bc(1, -2, +1) == [[1, 1], [-2, -1]]", 1e-15,
        partial(_bc_formula, roots))
    add("param.bc_exponential", "param", "exponential of the bc family in closed form", 1e-12,
        partial(_bc_exponential, config))
    add("param.ellipse", "param", "phasor path of a non-orthogonal root lies on an ellipse", 1e-9,
        partial(_ellipse, roots))

    add("general.odd_rejection", "general", "random real 3x3 and 5x5 matrices are all rejected", 0.0,
        partial(_odd_rejection, config))
    add("general.odd_search", "general", "residual search never gets below 0.1 for real 3x3", 0.1,
        partial(_odd_search, config), cls=ObstructionProperty)
    add("general.linearity", "general", "dft1d(a f + b g) == a dft1d(f) + b dft1d(g)", 1e-12,
        partial(_linearity, roots))
    add("general.inverse_negation", "general", "inverse transform is the forward transform with -J", 0.0,
        partial(_inverse_negation, roots))
    add("general.worker_determinism", "general", "results do not depend on the worker count", 0.0,
        partial(_worker_determinism, roots))

    logger.debug(f"Default engine: {len(engine.properties)} properties")
    return engine
