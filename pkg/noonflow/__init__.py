"""NOONFLOW: phase sensitivity and entanglement of N00N states under decoherence."""

import logging

__version__ = '1.0.0'

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'


def configure_logging(level=logging.WARNING):
    """Install a single stream handler on the package logger"""
    package_logger = logging.getLogger('noonflow')
    package_logger.setLevel(level)
    if not package_logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        package_logger.addHandler(handler)
    return package_logger
