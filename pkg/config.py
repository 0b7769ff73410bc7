# ---- File: config.py ----

from fractions import Fraction
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field, PositiveInt, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load .env before BaseSettings reads the environment
load_dotenv()


class Settings(BaseSettings):
    """Engine configuration (environment variables prefixed with INVFORM_)."""

    # --- Logging ---
    log_level: str = Field("INFO", description="Root logging level for the command-line tool")

    # --- Triviality decisions ---
    witness_height: PositiveInt = Field(100, description="Largest integer coordinate tried on 1- and 2-dimensional coordinate subspaces")
    witness_height_wide: PositiveInt = Field(6, description="Largest integer coordinate tried on coordinate subspaces of dimension >= 3")
    witness_max_support: PositiveInt = Field(3, description="Largest coordinate-subspace dimension enumerated by the witness search")
    branch_depth: PositiveInt = Field(12, description="Maximal case-split depth of the zero-propagation tier")

    # --- Root isolation ---
    root_refine_width: str = Field("1/1000", description="Isolating intervals are refined below this width")

    # --- Metric sampling ---
    metric_samples: PositiveInt = Field(10, description="Random admissible metrics used by --check-samples")
    sample_seed: int = Field(20240611, description="Seed of the deterministic rational metric sampler")

    # --- Debugging ---
    verify_coordinates: bool = Field(False, description="Re-expand invariant coordinates and compare exactly")

    # --- Catalog ---
    catalog_dir: Optional[str] = Field(None, description="Directory searched for spec files before the bundled catalog")

    model_config = SettingsConfigDict(
        env_prefix="INVFORM_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        case_sensitive=False,
    )

    @field_validator("root_refine_width")
    @classmethod
    def _positive_rational(cls, value: str) -> str:
        try:
            width = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"root_refine_width must be an exact rational, got {value!r}") from exc
        if width <= 0:
            raise ValueError("root_refine_width must be positive")
        return value

    @property
    def refine_width(self) -> Fraction:
        return Fraction(self.root_refine_width)


# Single settings instance imported by the other modules
settings = Settings()  # type: ignore
