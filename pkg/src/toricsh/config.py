"""Configuration management for the toricsh toolkit."""

import logging
from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)

KNOWN_SECTIONS = ("qh", "sh", "lefschetz", "mirror", "bounds")


def split_csv(value: str) -> list[str]:
    """Split a comma-separated option into stripped, non-empty items."""
    return [item.strip() for item in value.split(",") if item.strip()]


class ToolkitConfig(BaseSettings):
    """Defaults for the analysis pipeline, overridable through TORICSH_* variables."""

    model_config = SettingsConfigDict(
        env_prefix="TORICSH_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    default_sections: str = Field(
        default=",".join(KNOWN_SECTIONS),
        description="Comma-separated report sections computed when --sections is omitted",
    )

    default_levels: str = Field(
        default="",
        description=(
            "Comma-separated Lefschetz levels checked when --level is omitted. "
            "Empty means: derive from the vanishing ranges of the leaves."
        ),
    )

    max_model_depth: int = Field(
        default=8,
        ge=1,
        le=64,
        description="Maximum nesting depth of a model expression",
    )

    max_blowup_count: int = Field(
        default=64,
        ge=1,
        le=4096,
        description="Maximum total number of blown-up points in one expression",
    )

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="WARNING",
        description="Log level used when --verbose is not given",
    )

    @field_validator("default_sections")
    @classmethod
    def validate_sections_format(cls, v: str) -> str:
        """Reject unknown section names."""
        unknown = sorted(set(split_csv(v)) - set(KNOWN_SECTIONS))
        if unknown:
            raise ValueError(
                f"Unknown section(s): {', '.join(unknown)}. "
                f"Valid sections: {', '.join(KNOWN_SECTIONS)}"
            )
        return v

    def get_sections(self) -> list[str]:
        """Parse default sections into a list in canonical order."""
        chosen = set(split_csv(self.default_sections))
        return [s for s in KNOWN_SECTIONS if s in chosen]

    def get_levels(self) -> Optional[list[int]]:
        """Parse default levels; None means derive them from the model."""
        items = split_csv(self.default_levels)
        if not items:
            return None
        return [int(item) for item in items]

    def validate_config(self) -> None:
        """Validate configuration at startup. Raises ValueError if invalid."""
        errors = []

        try:
            levels = self.get_levels()
        except ValueError:
            errors.append(f"DEFAULT_LEVELS must be integers (value: '{self.default_levels}')")
        else:
            if levels is not None and any(level < 1 for level in levels):
                errors.append("DEFAULT_LEVELS must be positive")

        if errors:
            raise ValueError(
                "Configuration validation failed:\n"
                + "\n".join(f"  - {e}" for e in errors)
            )


_config_instance: Optional[ToolkitConfig] = None


def build_config(*, validate: bool = True) -> ToolkitConfig:
    """Create a new configuration instance for an explicit lifecycle owner."""
    config = ToolkitConfig()
    if validate:
        config.validate_config()
        logger.debug("Configuration validated successfully")
    return config


def get_config() -> ToolkitConfig:
    """Get or create global configuration instance."""
    global _config_instance
    if _config_instance is None:
        _config_instance = build_config()
    return _config_instance


def get_config_unvalidated() -> ToolkitConfig:
    """Get or create global configuration instance without validation."""
    global _config_instance
    if _config_instance is None:
        _config_instance = build_config(validate=False)
    return _config_instance


def reload_config() -> ToolkitConfig:
    """Reload configuration (useful for testing)."""
    global _config_instance
    _config_instance = ToolkitConfig()
    return _config_instance
