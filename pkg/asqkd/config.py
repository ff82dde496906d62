from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Process settings, loaded from SQKD_* environment variables and/or a .env file.
    """
    SEED: Optional[int] = Field(default=None, ge=0, lt=2**64)
    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    WORKERS: int = Field(default=1, ge=1)
    TRIALS: int = Field(default=32, ge=1)
    P_T: float = Field(default=0.05, ge=0.0, lt=0.5)

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def _upper_log_level(cls, value):
        return value.strip().upper() if isinstance(value, str) else value

    model_config = SettingsConfigDict(
        env_prefix="SQKD_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


def get_settings() -> Settings:
    # Read per call so the CLI sees the environment of each invocation.
    return Settings()
