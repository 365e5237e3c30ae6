"""
Configuration settings for connspace.
"""

from typing import Any, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from CONNSPACE_* environment variables or a .env file."""

    # Application settings
    app_name: str = "connspace"
    debug: bool = False
    host: str = "0.0.0.0"
    port: int = 8000
    log_level: str = "warning"

    # Size guards
    max_carrier: int = 20
    max_family: int = 2**20
    max_hom: int = 2**16
    max_search: int = 2**20
    max_iso_carrier: int = 10
    max_enumeration_carrier: int = 4

    model_config = SettingsConfigDict(
        env_prefix="CONNSPACE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the process-wide settings, loading them on first use."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def override_settings(**values: Any) -> Settings:
    """Replace the process-wide settings; None values keep the current value."""
    global _settings
    updates = {key: value for key, value in values.items() if value is not None}
    _settings = get_settings().model_copy(update=updates)
    return _settings


def reset_settings() -> None:
    global _settings
    _settings = None
