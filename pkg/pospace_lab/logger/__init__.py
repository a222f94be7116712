# logger/__init__.py
from pospace_lab.utils.config_loader import load_config

from .custom_logger import CustomLogger

# One shared logger for the whole package; modules import GLOBAL_LOGGER as log
_logging_cfg = load_config().get("logging", {})
GLOBAL_LOGGER = CustomLogger(
    log_dir=_logging_cfg.get("log_dir"),
    level=_logging_cfg.get("level"),
).get_logger("pospace_lab")
