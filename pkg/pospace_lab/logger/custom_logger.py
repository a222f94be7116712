import os
import sys
import logging
from datetime import datetime
import structlog


class CustomLogger:
    def __init__(self, log_dir: str | None = None, level: str | None = None):
        # Env overrides win over the packaged defaults
        log_dir = os.getenv("POSPACE_LAB_LOG_DIR", log_dir or "logs")
        self.level = getattr(logging, os.getenv("POSPACE_LAB_LOG_LEVEL", level or "INFO").upper(), logging.INFO)

        self.logs_dir = os.path.join(os.getcwd(), log_dir)
        os.makedirs(self.logs_dir, exist_ok=True)

        # Timestamped log file (for persistence)
        log_file = f"{datetime.now().strftime('%m_%d_%Y_%H_%M_%S')}.log"
        self.log_file_path = os.path.join(self.logs_dir, log_file)

    def get_logger(self, name=__file__):
        logger_name = os.path.basename(name)

        file_handler = logging.FileHandler(self.log_file_path)
        file_handler.setLevel(self.level)
        file_handler.setFormatter(logging.Formatter("%(message)s"))  # Raw JSON lines

        # stderr, so report text on stdout stays byte-identical between runs
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(self.level)
        console_handler.setFormatter(logging.Formatter("%(message)s"))

        logging.basicConfig(
            level=self.level,
            format="%(message)s",
            handlers=[console_handler, file_handler],
        )

        structlog.configure(
            processors=[
                structlog.processors.TimeStamper(fmt="iso", utc=True, key="timestamp"),
                structlog.processors.add_log_level,
                structlog.processors.EventRenamer(to="event"),
                structlog.processors.JSONRenderer(sort_keys=True),
            ],
            logger_factory=structlog.stdlib.LoggerFactory(),
            cache_logger_on_first_use=True,
        )

        return structlog.get_logger(logger_name)
