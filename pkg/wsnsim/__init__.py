"""Bootstrap the wireless sensor network lifetime simulator."""

import logging
import os
from logging.handlers import RotatingFileHandler

from dotenv import load_dotenv

from wsnsim.config import Config, get_config
from wsnsim.extensions import logger

__version__ = "1.0.0"


def init_app(config_name: str = None) -> Config:
    """Load the environment, configure logging and return the config."""
    load_dotenv()
    config = get_config(config_name)
    configure_logging(config)
    logger.info("Running in %s mode.", config.ENV)
    return config


def configure_logging(config: Config) -> None:
    """Configure a rotating file logger and also stream to console."""
    # If there's already a handler, skip (so we don't double-add on re-run)
    if logger.handlers:
        return

    # Log format: timestamp, log level, file:line, message
    fmt = logging.Formatter(
        "[%(asctime)s] %(levelname)s in %(module)s:%(lineno)d: %(message)s"
    )
    level = getattr(logging, config.LOG_LEVEL, logging.INFO)

    # -------------------------
    # 1) StreamHandler (console)
    # -------------------------
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(fmt)
    console_handler.setLevel(level)
    logger.addHandler(console_handler)

    # -------------------------
    # 2) RotatingFileHandler (file)
    # -------------------------
    os.makedirs(config.LOG_DIR, exist_ok=True)
    file_handler = RotatingFileHandler(
        filename=os.path.join(config.LOG_DIR, "wsnsim.log"),
        maxBytes=10 * 1024 * 1024,  # 10 MB per file
        backupCount=5,  # keep up to 5 old log files
    )
    file_handler.setFormatter(fmt)
    file_handler.setLevel(level)
    logger.addHandler(file_handler)

    # Set the overall logging level
    logger.setLevel(level)
    logger.info("Logging is configured.")
