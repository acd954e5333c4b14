"""
Configuration management for the global alliance toolkit
Environment-based configuration with validation
"""

import os
from typing import Optional
from dataclasses import dataclass
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


@dataclass
class Config:
    """Application configuration"""

    # Exact solver limits
    max_exact_n: int = 22

    # Corpus enumeration limits
    max_labeled_n: int = 9  # 9^7 = 4.8M labeled trees
    max_free_n: int = 10

    # Random corpora
    default_seed: int = 0
    default_samples: int = 100

    # Sweep execution
    sweep_workers: int = 1

    # Logging
    log_level: str = "INFO"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    log_file: str = ""

    # Bundled tree files
    fixtures_dir: str = "trees"

    def __post_init__(self):
        """Validate configuration after initialization"""
        self.validate()

    @classmethod
    def from_env(cls) -> 'Config':
        """Create configuration from environment variables"""
        return cls(
            max_exact_n=int(os.getenv("MAX_EXACT_N", "22")),
            max_labeled_n=int(os.getenv("MAX_LABELED_N", "9")),
            max_free_n=int(os.getenv("MAX_FREE_N", "10")),
            default_seed=int(os.getenv("DEFAULT_SEED", "0")),
            default_samples=int(os.getenv("DEFAULT_SAMPLES", "100")),
            sweep_workers=int(os.getenv("SWEEP_WORKERS", "1")),
            log_level=os.getenv("LOG_LEVEL", "INFO"),
            log_format=os.getenv("LOG_FORMAT", "%(asctime)s - %(name)s - %(levelname)s - %(message)s"),
            log_file=os.getenv("LOG_FILE", ""),
            fixtures_dir=os.getenv("FIXTURES_DIR", "trees"),
        )

    def validate(self):
        """Validate configuration values"""
        errors = []

        if self.max_exact_n <= 0:
            errors.append("max_exact_n must be positive")

        if not 1 <= self.max_labeled_n <= 9:
            errors.append("max_labeled_n must be between 1 and 9")

        if not 1 <= self.max_free_n <= 10:
            errors.append("max_free_n must be between 1 and 10")

        if not 0 <= self.default_seed < 2 ** 64:
            errors.append("default_seed must be an unsigned 64-bit integer")

        if self.default_samples <= 0:
            errors.append("default_samples must be positive")

        if self.sweep_workers <= 0:
            errors.append("sweep_workers must be positive")

        valid_log_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if self.log_level.upper() not in valid_log_levels:
            errors.append(f"log_level must be one of: {', '.join(valid_log_levels)}")

        if errors:
            raise ValueError(f"Configuration validation failed: {'; '.join(errors)}")

    def fixture_path(self, name: str) -> str:
        """Path of a bundled tree file"""
        return os.path.join(self.fixtures_dir, name)


# Global configuration instance
config: Optional[Config] = None


def get_config() -> Config:
    """Get global configuration instance"""
    global config
    if config is None:
        config = Config.from_env()
    return config


def reload_config():
    """Reload configuration from environment"""
    global config
    config = Config.from_env()


# Helper functions for common configuration access
def get_max_exact_n() -> int:
    """Get the exact solver size cap"""
    return get_config().max_exact_n


def get_max_labeled_n() -> int:
    """Get the labeled enumeration cap"""
    return get_config().max_labeled_n


def get_max_free_n() -> int:
    """Get the free tree enumeration cap"""
    return get_config().max_free_n
