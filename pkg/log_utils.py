"""
Logging helpers: one place that configures handlers and formats command banners.
"""
import logging
import time

from config import LOG_LEVEL

COMMAND_LOGGER_NAME = 'diffrest.commands'
_configured = False


def setup_logging(level=None):
    """Configure the root handler once; later calls only adjust the level."""
    global _configured
    level_name = (level or LOG_LEVEL).upper()
    numeric_level = getattr(logging, level_name, logging.INFO)
    if not _configured:
        logging.basicConfig(
            level=numeric_level,
            format='%(asctime)s %(levelname)s [%(name)s] %(message)s',
        )
        _configured = True
    logging.getLogger().setLevel(numeric_level)


def log_command_action(command_name, params=None, details=None, level="INFO"):
    """Log command details in a standardized format and return the message."""
    timestamp = time.strftime("%Y-%m-%d %H:%M:%S")
    params_str = f", Params: {params}" if params else ""
    details_str = f" - {details}" if details else ""
    log_message = f"[{timestamp}] {level} | COMMAND: {command_name}{params_str}{details_str}"

    logger = logging.getLogger(COMMAND_LOGGER_NAME)
    numeric_level = getattr(logging, str(level).upper(), logging.INFO)
    logger.log(numeric_level, "=" * 80)
    logger.log(numeric_level, log_message)
    logger.log(numeric_level, "=" * 80)
    return log_message
