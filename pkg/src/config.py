"""Configuration management using Pydantic Settings."""

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings."""

    # Algebra limits
    max_prime: int = 31
    max_dim: int = 4
    carrier_budget: int = 2048  # Largest p**n we are willing to enumerate

    # Verification suite
    default_seed: int = 1
    default_trials: int = 50
    r_denominator: int = 10  # Value grid for amplitudes
    w_denominator: int = 4  # Value grid for phases (multiples of pi)
    max_chain_length: int = 4
    probe_budget: int = 10_000

    # Caching
    table_cache_size: int = 64

    # Logging
    log_level: str = "INFO"

    # API Configuration
    api_host: str = "0.0.0.0"
    api_port: int = 8000

    # Scenario files
    scenario_dir: str = "data/scenarios"

    class Config:
        env_file = ".env"
        env_prefix = "CFLA_"
        case_sensitive = False

    @property
    def clean_log_level(self) -> str:
        """Get log_level with comments and whitespace stripped."""
        level = self.log_level
        if "#" in level:
            level = level.split("#")[0]
        level = level.strip().upper()

        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: '{self.log_level}'")

        return level


# Global settings instance
settings = Settings()
