"""
Logging configuration for dwssp
"""
import logging
import os

from .config import DEFAULT_LOG_FORMAT, DEFAULT_LOG_LEVEL

_FILE_HANDLER_NAME = "dwssp-file"


def configure_logging(log_level=DEFAULT_LOG_LEVEL, log_file_path=None):
    """Configure logging for dwssp.

    The ``dwssp`` logger gets *log_level* so ``--verbose`` reaches per-pivot
    and per-iteration records. Calling again with a new *log_file_path*
    replaces the previous dwssp log file rather than adding a second one.

    Args:
        log_level: The logging level to use (default: INFO, or DWSSP_LOG_LEVEL)
        log_file_path: Optional path to log file. If None, only StreamHandler is used.

    Raises:
        OSError: If the log file or its directory cannot be created.
    """
    logging.basicConfig(level=log_level, format=DEFAULT_LOG_FORMAT,
                        handlers=[logging.StreamHandler()])
    logging.getLogger("dwssp").setLevel(log_level)

    if not log_file_path:
        return

    log_dir = os.path.dirname(log_file_path)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
    file_handler = logging.FileHandler(log_file_path, encoding="utf-8")
    file_handler.set_name(_FILE_HANDLER_NAME)
    file_handler.setLevel(log_level)
    file_handler.setFormatter(logging.Formatter(DEFAULT_LOG_FORMAT))

    root = logging.getLogger()
    for handler in list(root.handlers):
        if handler.get_name() == _FILE_HANDLER_NAME:
            root.removeHandler(handler)
            handler.close()
    root.addHandler(file_handler)
