import logging
import os
from logging.handlers import RotatingFileHandler
import sys
from typing import Optional, Union

LOG_FILE_NAME = "zne_pqe.log"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logger(level: Union[int, str] = logging.INFO, log_dir: Optional[str] = None):
    """
    Configure the logging system for the experiment harness.
    Console handler always; rotating file handler under ZNEPQE_LOG_DIR (default ./logs).
    If the file handler cannot be created, logs a warning and continues with console only.
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    log_file_path = None
    try:
        logs_dir = log_dir or os.getenv("ZNEPQE_LOG_DIR", "logs")

        root_logger = logging.getLogger()
        root_logger.setLevel(level)

        # Clear any existing handlers to avoid duplicates when called twice
        if root_logger.handlers:
            root_logger.handlers.clear()

        console_handler = logging.StreamHandler()
        console_handler.setLevel(level)
        console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root_logger.addHandler(console_handler)

        try:
            os.makedirs(logs_dir, exist_ok=True)
            log_file_path = os.path.join(logs_dir, LOG_FILE_NAME)
            file_handler = RotatingFileHandler(
                log_file_path,
                maxBytes=5*1024*1024,  # 5MB
                backupCount=3,
                encoding='utf-8'
            )
            file_handler.setLevel(level)
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(pathname)s:%(lineno)d - %(message)s'
            ))
            root_logger.addHandler(file_handler)
            root_logger.debug(f"Logging to file: {log_file_path}")
        except Exception as e:
            root_logger.warning(f"Failed to set up file logging to {log_file_path or logs_dir}: {e}. Logging will proceed only to console.")

    except Exception as e:
        print(f"CRITICAL ERROR during logger setup: {e}", file=sys.stderr)
        root_logger = logging.getLogger("fallback_logger")
        if not root_logger.handlers:
            fallback_handler = logging.StreamHandler(sys.stderr)
            fallback_handler.setLevel(logging.ERROR)
            fallback_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            root_logger.addHandler(fallback_handler)
            root_logger.error(f"Logger setup failed: {e}. Using fallback stderr logger.")
        return root_logger

    return root_logger
