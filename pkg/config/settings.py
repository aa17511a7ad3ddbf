"""
Runtime settings for the reduction toolkit.

Values come from the environment (a local .env is loaded when present),
falling back to the defaults below.
"""
import os
from pathlib import Path

from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / ".env")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


# Verification depth and search fuel used when a caller passes none
DEFAULT_DEPTH = _int_env("WKL_DEFAULT_DEPTH", 64)
DEFAULT_FUEL = _int_env("WKL_DEFAULT_FUEL", 10_000)

# Cap on items a lazy pipeline may pull before giving up
DEMAND_FUEL = _int_env("WKL_DEMAND_FUEL", 200_000)

# Most outputs a lifted machine may emit per consumed input item
LIFT_BURST = _int_env("WKL_LIFT_BURST", 1 << 16)

# Levels of lookahead used by the leftmost-path tree oracle
PATH_LOOKAHEAD = _int_env("WKL_PATH_LOOKAHEAD", 6)

# Quantifier bound for C_k evaluation when an instance declares none
WITNESS_BOUND = _int_env("WKL_WITNESS_BOUND", 64)

# Trace store
STORE_DIR = Path(os.getenv("WKL_STORE_DIR", str(BASE_DIR / "var" / "traces")))

LOG_LEVEL = os.getenv("WKL_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"
