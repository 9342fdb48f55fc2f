"""
Configuration management using Pydantic Settings.
Loads CHW_* environment variables, optionally from a .env file.
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Classifier settings loaded from environment variables"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="CHW_",
        case_sensitive=False,
        extra="ignore"
    )

    # Reproducibility
    seed: int = Field(default=0, description="Seed for randomized tests and verification samples")

    # Workers
    jobs: int = Field(default=1, ge=1, description="Default number of classify workers")

    # Logging
    log_level: str = Field(default="WARNING", description="Logging level")
    log_file: str = Field(default="", description="Log file path (empty disables the file handler)")

    # Verification
    debug_checks: bool = Field(default=False, description="Re-check invariants after every operation")
    verify_stride: int = Field(default=4096, ge=1, description="Re-verify every n-th enumerated Phi matrix")
    affine_samples: int = Field(default=64, ge=0, description="Random spot checks per derived cell generator")
    oracle_sample: int = Field(
        default=0,
        ge=0,
        description="Orbit representatives checked against the oracle per cell (0 = all)"
    )

    # Limits
    max_cell_bits: int = Field(default=24, description="Largest cell accepted, as log2 of its Phi count")
    max_classify_dim: int = Field(default=5, description="Largest dimension accepted by classify")


# Global settings instance
_settings: Settings = None


def get_settings() -> Settings:
    """Get or create global settings instance"""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached instance so the next call re-reads the environment"""
    global _settings
    _settings = None
