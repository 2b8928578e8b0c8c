# genperm/backend/config.py
import logging
import os
import sys
from pathlib import Path

from dotenv import load_dotenv

from genperm import __version__
from genperm.backend.errors import ConfigError

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent.parent
DATA_DIR = Path(os.getenv("GENPERM_DATA_DIR", str(BASE_DIR / "data")))
OUTPUT_DIR = Path(os.getenv("GENPERM_OUTPUT_DIR", str(DATA_DIR / "output")))


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None


DEFAULT_SEED = _int_env("GENPERM_SEED", 0)
MAX_ITER = _int_env("GENPERM_MAX_ITER", 15)
DEFAULT_JOBS = _int_env("GENPERM_JOBS", 1)
LOG_LEVEL = os.getenv("GENPERM_LOG_LEVEL", "WARNING").upper()

# 12 significant digits keeps golden outputs stable across platforms
NUMBER_FORMAT = ".12g"
TOOL_VERSION = __version__

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: str | None = None) -> logging.Logger:
    """Attach a single stderr handler to the package logger."""
    logger = logging.getLogger("genperm")
    logger.setLevel((level or LOG_LEVEL).upper())
    ours = [h for h in logger.handlers if getattr(h, "_genperm", False)]
    if ours:
        # stderr may have been swapped since the last call (test runners do this)
        ours[0].setStream(sys.stderr)
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._genperm = True
        logger.addHandler(handler)
    logger.propagate = False
    return logger
