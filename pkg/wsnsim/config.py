"""Define process configuration classes for different environments."""
import os

from wsnsim.error_handlers import InvalidConfig


def _env_int(name: str, default: int) -> int:
    """Read a positive integer environment variable."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidConfig(
            f"{name} must be an integer, got {raw!r}", key=name
        )
    if value < 1:
        raise InvalidConfig(f"{name} must be at least 1", key=name)
    return value


class Config:
    """
    Base configuration.

    Any setting here is common to all environments unless overridden below.
    Values are read when the class is instantiated so tests can patch the
    environment first.
    """

    DEBUG: bool = False
    ENV: str = "production"
    LOG_LEVEL: str = "INFO"

    def __init__(self):
        """Read and validate the environment-driven settings."""
        self.WORKERS: int = _env_int(
            "WSNSIM_WORKERS", os.cpu_count() or 1
        )
        self.LOG_DIR: str = os.getenv("WSNSIM_LOG_DIR", "logs")
        self.LOG_LEVEL = os.getenv("WSNSIM_LOG_LEVEL", self.LOG_LEVEL).upper()
        if self.LOG_LEVEL not in {"DEBUG", "INFO", "WARNING", "ERROR"}:
            raise InvalidConfig(
                f"Unsupported log level: {self.LOG_LEVEL}",
                key="WSNSIM_LOG_LEVEL",
            )


class DevelopmentConfig(Config):
    """Configuration for local development."""

    DEBUG: bool = True
    ENV: str = "development"
    LOG_LEVEL: str = "DEBUG"


class TestingConfig(Config):
    """Configuration for testing."""

    DEBUG: bool = True
    ENV: str = "testing"


class ProductionConfig(Config):
    """Configuration for batch experiment runs."""

    DEBUG: bool = False
    ENV: str = "production"


def get_config(name: str = None) -> Config:
    """Instantiate the config class selected by name or ``WSNSIM_ENV``."""
    config_name = (name or os.getenv("WSNSIM_ENV", "production")).lower()
    if config_name == "development":
        return DevelopmentConfig()
    if config_name == "testing":
        return TestingConfig()
    return ProductionConfig()
