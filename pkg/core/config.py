from pathlib import Path
from typing import Any, Literal, Optional

from dotenv import dotenv_values
from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

ENV_PREFIX = "MZVLAB_"


class Settings(BaseSettings):
    # Numeric engine
    precision_digits: int = Field(50, description="Working precision in decimal digits")
    default_eps: float = Field(1e-12, description="Absolute error bound for convergent values")
    cache_size: int = Field(200_000, description="Maximum number of memoized convergent values")

    # Verification sweeps
    trunc_n: int = Field(10_000, description="Truncation of the infinite n-sums in the finite theorems")
    max_weight: int = 6
    max_depth: int = 3
    window_radius: int = 12
    seed: int = 42
    corollary_trunc_factor: int = 16
    certificate_q: Optional[int] = None

    # Output / execution
    output_format: Literal["json", "table"] = "json"
    workers: int = 4

    # LangGraph Configuration
    max_retries: int = 2
    precision_step: int = 20

    # Logging
    log_level: str = "INFO"
    log_file: Optional[Path] = None

    # MCP Configuration
    mcp_timeout_seconds: int = 600

    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX,
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @model_validator(mode="after")
    def validate_bounds(self) -> "Settings":
        """Reject non-positive sweep bounds and unreachable error requests."""
        for name in ("precision_digits", "trunc_n", "max_weight", "max_depth", "window_radius",
                     "workers", "precision_step", "corollary_trunc_factor", "cache_size"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.max_retries < 0:
            raise ValueError("max_retries cannot be negative")
        if not 1e-15 <= self.default_eps < 1:
            raise ValueError(f"default_eps must lie in [1e-15, 1), got {self.default_eps}")
        if self.certificate_q is not None and self.certificate_q < 2:
            raise ValueError("certificate_q must be at least 2")
        return self


def _read_config_file(config_file: Path) -> dict[str, Any]:
    """key=value file; keys may carry the MZVLAB_ prefix or not."""
    values: dict[str, Any] = {}
    for key, value in dotenv_values(config_file).items():
        if value is None:
            continue
        name = key.strip().lower()
        if name.startswith(ENV_PREFIX.lower()):
            name = name[len(ENV_PREFIX):]
        values[name] = value
    return values


def load_settings(config_file: Optional[Path] = None, **overrides: Any) -> Settings:
    """Build settings with precedence overrides > config file > environment > defaults."""
    values: dict[str, Any] = {}
    if config_file is not None:
        if not Path(config_file).is_file():
            raise FileNotFoundError(f"config file not found: {config_file}")
        values.update(_read_config_file(Path(config_file)))
    values.update({key: value for key, value in overrides.items() if value is not None})
    return Settings(**values)


def apply_settings(new: Settings) -> Settings:
    """Copy `new` into the global instance so modules holding `settings` see it."""
    for name in Settings.model_fields:
        setattr(settings, name, getattr(new, name))
    return settings


# Global settings instance
settings = Settings()
