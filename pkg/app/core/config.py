# app/core/config.py
import os
from functools import lru_cache
from typing import Optional, Dict, Any
from pydantic_settings import BaseSettings
from pydantic import field_validator
import logging
import logging.config


class Settings(BaseSettings):
    # App Settings
    APP_ENV: Optional[str] = None
    DEBUG: Optional[bool] = None

    PROJECT_NAME: str = "mzv-workbench"
    PROJECT_DESCRIPTION: Optional[str] = (
        "Word algebras, multiple zeta values and identity verification"
    )
    APP_VERSION: str = "v0.1.0"

    # Server
    HOST: str = "127.0.0.1"
    PORT: int = 8001

    # Numerics
    PRECISION_DIGITS: int = 40
    GUARD_DIGITS: int = 15
    MAX_SERIES_TERMS: int = 20000
    QUADRATURE_ORDER: int = 12
    DEFAULT_X: str = "1"

    # Verification tolerances
    MZV_TOLERANCE: float = 1e-20
    GF_TOLERANCE: float = 1e-10
    ALTERNATING_TOLERANCE: float = 1e-6
    INTEGRAL_TOLERANCE: float = 1e-8

    # Suite
    SUITE_JOBS: int = 1

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "text"

    @field_validator("LOG_FORMAT")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        if v not in ["json", "text"]:
            raise ValueError("Log format must be either 'json' or 'text'")
        return v

    @field_validator("PRECISION_DIGITS", "GUARD_DIGITS", "MAX_SERIES_TERMS", "QUADRATURE_ORDER", "SUITE_JOBS", "PORT")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Numeric settings must be positive")
        return v

    def get_logging_config(self) -> Dict[str, Any]:
        """Generate logging configuration based on settings."""
        return {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "json": {
                    "()": "pythonjsonlogger.jsonlogger.JsonFormatter",
                    "format": "%(asctime)s %(levelname)s %(name)s %(message)s"
                },
                "standard": {
                    "format": "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
                }
            },
            "handlers": {
                "default": {
                    "formatter": "json" if self.LOG_FORMAT == "json" else "standard",
                    "class": "logging.StreamHandler",
                    "stream": "ext://sys.stderr"
                }
            },
            "root": {
                "handlers": ["default"],
                "level": self.LOG_LEVEL
            }
        }

    def setup_logging(self) -> None:
        """Configure logging based on settings."""
        logging_config = self.get_logging_config()
        logging.config.dictConfig(logging_config)

    class Config:
        env_file = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(__file__))), ".env")
        case_sensitive = True
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Create a global settings instance
settings = get_settings()
