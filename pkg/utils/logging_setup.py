import logging
from logging.handlers import RotatingFileHandler

from utils.config import Config

LOG_FORMAT = "%(asctime)s %(levelname)s [%(name)s] %(message)s"


def setup_logging(config: Config, level: str = None) -> logging.Logger:
    """Configure the root logger from the logging section of the config."""
    settings = config.get("logging") or {}
    root = logging.getLogger()
    root.setLevel(level or settings.get("level") or "WARNING")

    # Re-running setup (tests, repeated CLI calls) must not stack handlers
    for handler in list(root.handlers):
        if getattr(handler, "_levelmt", False):
            root.removeHandler(handler)
            handler.close()

    formatter = logging.Formatter(LOG_FORMAT)

    console = logging.StreamHandler()
    console.setFormatter(formatter)
    console._levelmt = True
    root.addHandler(console)

    log_file = settings.get("file")
    if log_file:
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=settings.get("max_size", 10485760),
            backupCount=settings.get("backup_count", 5),
            encoding="utf-8"
        )
        file_handler.setFormatter(formatter)
        file_handler._levelmt = True
        root.addHandler(file_handler)

    return root
