"""
Provide instances shared across the simulator packages.

The logger is configured once by ``wsnsim.init_app``; every module
logs through it so console and file output stay in one stream.
"""
import logging

logger: logging.Logger = logging.getLogger("wsnsim")
