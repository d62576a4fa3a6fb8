import logging
import os

logger = logging.getLogger(__name__)


class HxdftConfig:
    """Configuration class for tolerances and numeric policy"""
    def __init__(self):
        # Root construction and validation
        self.constraint_tol = 1e-12  # parameter constraints, e.g. x^2+y^2+z^2-1
        self.exact_validation_tol = 1e-12  # ||J^2 + I||_max for constructor output
        self.validation_tol = 1e-10  # ||J^2 + I||_max for user matrices
        self.image_tol = 1e-10  # re-embedding check in from_matrix
        self.oracle_tol = 1e-10  # q*q = -1 check for biquaternion roots

        # Power-series oracle
        self.series_tol = 1e-15
        self.series_max_terms = 200

        # Transforms
        self.compensate_from = 64  # compensated summation for M >= this
        self.max_workers = 1

        # Command line
        self.snap_tol = 1e-6  # relative distance to the constraint surface
        self.snap_parameters = True

        # Verification
        self.default_seed = 20101
        self.seed_env_var = "HXDFT_SEED"
        self.workers_env_var = "HXDFT_WORKERS"
        self.pairs_per_algebra = 200
        self.thetas_per_root = 100
        self.signals_per_size = 20
        self.classic_signals = 50
        self.round_trip_sizes = (1, 2, 7, 16, 128)
        self.oracle_sizes = (1, 3, 8)
        self.odd_trials = 1000
        self.odd_restarts = 500

    @property
    def seed(self) -> int:
        """Verification seed, overridden by the seed environment variable"""
        value = os.environ.get(self.seed_env_var)
        if value is None:
            return self.default_seed
        try:
            return int(value)
        except ValueError:
            logger.warning(f"Ignoring non-integer {self.seed_env_var}={value!r}")
            return self.default_seed

    @classmethod
    def from_env(cls) -> "HxdftConfig":
        """Create a default configuration with environment overrides applied"""
        config = cls()
        workers = os.environ.get(config.workers_env_var)
        if workers:
            try:
                config.max_workers = max(1, int(workers))
            except ValueError:
                logger.warning(f"Ignoring non-integer {config.workers_env_var}={workers!r}")
        return config

    @classmethod
    def for_profile(cls, profile: str) -> "HxdftConfig":
        """Create a configuration preset for a named profile"""
        config = cls.from_env()

        if profile == "strict":
            # Parameters must sit on the constraint surface already
            config.snap_parameters = False

        elif profile == "desk":
            # Quick verification runs
            config.pairs_per_algebra = 50
            config.thetas_per_root = 25
            config.signals_per_size = 2
            config.classic_signals = 8
            config.round_trip_sizes = (1, 2, 7, 16)
            config.odd_trials = 200
            config.odd_restarts = 50

        elif profile != "default":
            logger.warning(f"Unknown profile '{profile}', using default configuration")

        return config


_config = HxdftConfig.from_env()


def get_config() -> HxdftConfig:
    """Get the process-wide configuration"""
    return _config


def set_config(config: HxdftConfig) -> None:
    """Replace the process-wide configuration"""
    global _config
    _config = config
    logger.debug(f"Configuration replaced (seed={config.seed}, workers={config.max_workers})")
