import logfire
import numpy as np
import pytest

from hxdft.core.config import HxdftConfig, get_config, set_config
from hxdft.core.roots import builtin_roots


@pytest.fixture(scope="session", autouse=True)
def offline_logfire():
    logfire.configure(send_to_logfire=False, console=False)


@pytest.fixture(autouse=True)
def restore_config():
    config = get_config()
    yield
    set_config(config)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def catalog():
    return builtin_roots()


@pytest.fixture
def desk_config():
    config = HxdftConfig.for_profile("desk")
    set_config(config)
    return config
