import os
from dataclasses import dataclass
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


@dataclass
class Config:
    """Configuration settings for the far-paths solver and its tooling"""

    # Instance corpus
    CORPUS_DIR: str = os.getenv("FARPATHS_CORPUS_DIR", "./corpus")
    FORMAT_VERSION: int = 1  # Version written into instance/certificate files
    DEFAULT_SEED: int = int(os.getenv("FARPATHS_SEED", "7"))

    # Logging
    LOG_LEVEL: str = os.getenv("FARPATHS_LOG_LEVEL", "WARNING")

    # Brute-force oracle limits
    ORACLE_VERTEX_CAP: int = 14  # Largest instance the oracle will enumerate
    ORACLE_PATH_CAP: int = 20000  # Maximum enumerated S-T paths

    # Solver behaviour
    PAIRING_LIMIT: int = int(os.getenv("FARPATHS_PAIRING_LIMIT", "20000"))
    CHECK_BOUNDS: bool = _env_flag("FARPATHS_CHECK_BOUNDS", True)
    CHECK_PUSHED: bool = _env_flag("FARPATHS_CHECK_PUSHED", False)

    # Benchmark harness
    BENCH_WORKERS: int = int(os.getenv("FARPATHS_BENCH_WORKERS", "4"))


config = Config()
