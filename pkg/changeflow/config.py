"""
Application configuration management using pydantic-settings
"""
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import List


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    # Application
    APP_NAME: str = "changeflow"
    APP_VERSION: str = "0.3.0"
    SCHEMA_VERSION: str = "1"

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_RICH: bool = True

    # Output
    DEFAULT_FORMAT: str = "json"
    JSON_INDENT: int = 2

    # Dependency generation
    ADDITION_MATRIX_PATH: str = ""

    # Inconsistency awareness
    STRICT: bool = False
    MONITOR_POSSIBILITIES: bool = True

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True
    )

    @property
    def formats_list(self) -> List[str]:
        """Output formats understood by every subcommand"""
        return ["json", "human"]


# Global settings instance
settings = Settings()
