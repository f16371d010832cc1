import logging

import pytest

from wsnsim.energy.models import RadioParams
from wsnsim.extensions import logger
from wsnsim.utils.rng import ELECTION_STREAM, seeded_generator


@pytest.fixture(autouse=True, scope="session")
def quiet_logger():
    """Keep init_app from attaching console and file handlers."""
    handler = logging.NullHandler()
    logger.addHandler(handler)
    yield
    logger.removeHandler(handler)


@pytest.fixture
def radio():
    return RadioParams()


@pytest.fixture
def election_rng():
    return seeded_generator(11, ELECTION_STREAM)


@pytest.fixture
def clean_env(monkeypatch):
    for name in (
        "WSNSIM_ENV",
        "WSNSIM_WORKERS",
        "WSNSIM_LOG_DIR",
        "WSNSIM_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch
