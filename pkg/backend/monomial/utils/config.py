"""
Configuration Module

This module provides configuration settings for the monomial testing engine.
It loads environment variables from a .env file and provides default values.

"""

import os
from typing import Optional

import psutil
from dotenv import load_dotenv
from pydantic import validator
from pydantic_settings import BaseSettings

# Load environment variables from .env file
load_dotenv()


def parse_optional_int(env_value: Optional[str]) -> Optional[int]:
    """Parse an optional integer environment variable, ignoring junk"""
    if env_value is None or env_value.strip() == "":
        return None
    try:
        return int(env_value, 0)
    except ValueError:
        return None


class Settings(BaseSettings):
    """
    Engine settings loaded from environment variables with defaults.
    Settings are validated using Pydantic's BaseSettings.
    """

    # Core settings
    PROJECT_NAME: str = "Monomial Testing Engine"
    VERSION: str = "1.0.0"

    # Environment
    ENVIRONMENT: str = os.getenv("ENVIRONMENT", "development")

    # Logging configuration
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Randomness: a CLI --seed wins over this, this wins over entropy
    MONOMIAL_SEED: Optional[int] = parse_optional_int(os.getenv("MONOMIAL_SEED"))

    @validator("MONOMIAL_SEED", pre=True)
    def validate_seed(cls, v):
        return parse_optional_int(v) if isinstance(v, str) else v

    # Tester defaults
    DEFAULT_TRIALS: int = int(os.getenv("DEFAULT_TRIALS", "20"))
    DEFAULT_THREADS: int = int(os.getenv("DEFAULT_THREADS", "1"))
    MEM_MB: int = int(os.getenv("MEM_MB", "512"))
    ORACLE_CAP: int = int(os.getenv("ORACLE_CAP", str(10**6)))
    NAIVE_CONVOLUTION_LIMIT: int = int(os.getenv("NAIVE_CONVOLUTION_LIMIT", str(2**10)))
    CLIQUE_ORACLE_PRIME: int = int(os.getenv("CLIQUE_ORACLE_PRIME", "101"))
    BENCH_REPEATS: int = int(os.getenv("BENCH_REPEATS", "3"))

    # Get project root directory
    PROJECT_ROOT: str = os.path.abspath(os.path.join(os.path.dirname(__file__), "../../../"))

    # Set backend directory
    BACKEND_DIR: str = os.path.join(PROJECT_ROOT, "backend")

    # Set all data directories relative to backend
    DATA_DIR: str = os.getenv("MONOMIAL_DATA_DIR", os.path.join(BACKEND_DIR, "monomial", "data"))
    PHF_CACHE_DIR: str = os.path.join(DATA_DIR, "phf")
    REPORTS_DIR: str = os.path.join(DATA_DIR, "reports")
    LOGS_DIR: str = os.path.join(DATA_DIR, "logs")

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        # Create all data directories
        for dir_path in [self.DATA_DIR, self.PHF_CACHE_DIR, self.REPORTS_DIR, self.LOGS_DIR]:
            os.makedirs(dir_path, exist_ok=True)

    def memory_budget_bytes(self, mem_mb: Optional[int] = None) -> int:
        """Effective table budget: the configured cap, clamped to available memory"""
        requested = (mem_mb if mem_mb is not None else self.MEM_MB) * 1024 * 1024
        return min(requested, psutil.virtual_memory().available)

    class Config:
        """Pydantic settings configuration"""
        env_file = os.path.join(os.path.dirname(__file__), "../../../.env")
        env_file_encoding = "utf-8"
        case_sensitive = True
        extra = "ignore"  # Allow extra fields from .env file


# Create settings instance
settings = Settings()
